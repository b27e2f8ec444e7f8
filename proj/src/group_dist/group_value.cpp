#include "entadd/group_value.hpp"

#include "entadd/error.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace entadd {

namespace {

constexpr std::int64_t kInt64Min = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kInt64Max = std::numeric_limits<std::int64_t>::max();

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t combine(std::size_t seed, std::size_t h) {
  return mix64(seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

bool fits_int64(const BigInt& v) { return v >= kInt64Min && v <= kInt64Max; }

std::int64_t floor_mod(std::int64_t r, std::int64_t m) {
  std::int64_t x = r % m;
  return x < 0 ? x + m : x;
}

// Inverse of r modulo m, or nullopt when gcd(r, m) != 1.
std::optional<std::int64_t> mod_inverse(std::int64_t r, std::int64_t m) {
  __int128 old_r = r, cur_r = m;
  __int128 old_s = 1, cur_s = 0;
  while (cur_r != 0) {
    __int128 q = old_r / cur_r;
    __int128 tmp = old_r - q * cur_r;
    old_r = cur_r;
    cur_r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
  }
  if (old_r != 1) return std::nullopt;
  __int128 inv = old_s % m;
  if (inv < 0) inv += m;
  return static_cast<std::int64_t>(inv);
}

[[noreturn]] void mixed(const GroupValue& a, const GroupValue& b) {
  throw Error(ErrorKind::MixedGroup,
              "cannot combine " + a.to_string() + " (" + a.family().to_string() + ") with " +
                  b.to_string() + " (" + b.family().to_string() + ")");
}

// Boost 1.74's rational normalisation rejects negative denominators for
// unbounded integers, so the sign is moved to the numerator first.
Rational signed_ratio(BigInt num, BigInt den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

GroupValue numeric_apply(BinaryOp op, const GroupValue& a, const GroupValue& b) {
  if (op == BinaryOp::Div && b.is_zero()) {
    throw Error(ErrorKind::NonInvertibleDivisor, "division by zero");
  }
  if (a.is_small_int() && b.is_small_int()) {
    const __int128 x = a.small_int();
    const __int128 y = b.small_int();
    __int128 r = 0;
    switch (op) {
      case BinaryOp::Add: r = x + y; break;
      case BinaryOp::Sub: r = x - y; break;
      case BinaryOp::Mul: {
        if (__builtin_mul_overflow(a.small_int(), b.small_int(), &r)) {
          return GroupValue::integer(a.as_integer() * b.as_integer());
        }
        break;
      }
      case BinaryOp::Div:
        if (y != 0 && x % y == 0) {
          r = x / y;
          break;
        }
        return GroupValue::rational(signed_ratio(a.small_int(), b.small_int()));
    }
    if (r >= kInt64Min && r <= kInt64Max) return GroupValue::integer(static_cast<std::int64_t>(r));
    BigInt big = static_cast<std::int64_t>(r >> 64);
    big <<= 64;
    big += static_cast<std::uint64_t>(r);
    return GroupValue::integer(big);
  }
  if (a.kind() == GroupValue::Kind::Int && b.kind() == GroupValue::Kind::Int && op != BinaryOp::Div) {
    const BigInt x = a.as_integer();
    const BigInt y = b.as_integer();
    switch (op) {
      case BinaryOp::Add: return GroupValue::integer(BigInt(x + y));
      case BinaryOp::Sub: return GroupValue::integer(BigInt(x - y));
      case BinaryOp::Mul: return GroupValue::integer(BigInt(x * y));
      case BinaryOp::Div: break;
    }
  }
  const Rational x = a.as_rational();
  const Rational y = b.as_rational();
  switch (op) {
    case BinaryOp::Add: return GroupValue::rational(Rational(x + y));
    case BinaryOp::Sub: return GroupValue::rational(Rational(x - y));
    case BinaryOp::Mul: return GroupValue::rational(Rational(x * y));
    case BinaryOp::Div:
      return GroupValue::rational(signed_ratio(BigInt(numerator(x) * denominator(y)), BigInt(denominator(x) * numerator(y))));
  }
  return {};
}

std::int64_t checked(bool overflow, std::int64_t value) {
  if (overflow) throw Error(ErrorKind::UnsupportedOperation, "Z^d component overflow");
  return value;
}

}  // namespace

const char* to_string(BinaryOp op) noexcept {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
  }
  return "?";
}

std::string GroupValue::Family::to_string() const {
  switch (tag) {
    case Tag::Numeric: return "int";
    case Tag::Vector: return "intvec " + std::to_string(parameter);
    case Tag::Modular: return "zmod " + std::to_string(parameter);
  }
  return "?";
}

GroupValue GroupValue::integer(const BigInt& v) {
  if (fits_int64(v)) return GroupValue(Rep(static_cast<std::int64_t>(v)));
  return GroupValue(Rep(std::make_shared<const BigInt>(v)));
}

GroupValue GroupValue::rational(const Rational& v) {
  if (boost::multiprecision::denominator(v) == 1) return integer(boost::multiprecision::numerator(v));
  return GroupValue(Rep(std::make_shared<const Rational>(v)));
}

GroupValue GroupValue::vector(std::vector<std::int64_t> components) {
  if (components.empty()) throw Error(ErrorKind::InvalidArgument, "Z^d value needs d >= 1");
  return GroupValue(Rep(std::make_shared<const std::vector<std::int64_t>>(std::move(components))));
}

GroupValue GroupValue::residue(std::int64_t r, std::int64_t modulus) {
  if (modulus < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be >= 2");
  return GroupValue(Rep(Mod{floor_mod(r, modulus), modulus}));
}

GroupValue GroupValue::residue(const BigInt& r, std::int64_t modulus) {
  if (modulus < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be >= 2");
  BigInt x = r % modulus;
  if (x < 0) x += modulus;
  return GroupValue(Rep(Mod{static_cast<std::int64_t>(x), modulus}));
}

GroupValue::Kind GroupValue::kind() const noexcept {
  switch (rep_.index()) {
    case 0:
    case 1: return Kind::Int;
    case 2: return Kind::Rat;
    case 3: return Kind::IntVec;
    default: return Kind::IntMod;
  }
}

GroupValue::Family GroupValue::family() const noexcept {
  switch (kind()) {
    case Kind::Int:
    case Kind::Rat: return {Family::Tag::Numeric, 0};
    case Kind::IntVec:
      return {Family::Tag::Vector,
              static_cast<std::int64_t>(std::get<3>(rep_)->size())};
    case Kind::IntMod: return {Family::Tag::Modular, std::get<Mod>(rep_).m};
  }
  return {Family::Tag::Numeric, 0};
}

BigInt GroupValue::as_integer() const {
  if (auto p = std::get_if<std::int64_t>(&rep_)) return BigInt(*p);
  if (auto p = std::get_if<1>(&rep_)) return **p;
  throw Error(ErrorKind::UnsupportedOperation, to_string() + " is not an integer");
}

Rational GroupValue::as_rational() const {
  if (auto p = std::get_if<std::int64_t>(&rep_)) return Rational(*p);
  if (auto p = std::get_if<1>(&rep_)) return Rational(**p);
  if (auto p = std::get_if<2>(&rep_)) return **p;
  throw Error(ErrorKind::UnsupportedOperation, to_string() + " is not a rational number");
}

const std::vector<std::int64_t>& GroupValue::components() const {
  if (auto p = std::get_if<3>(&rep_)) return **p;
  throw Error(ErrorKind::UnsupportedOperation, to_string() + " is not a Z^d value");
}

std::int64_t GroupValue::residue_value() const {
  if (auto p = std::get_if<Mod>(&rep_)) return p->r;
  throw Error(ErrorKind::UnsupportedOperation, to_string() + " is not a residue");
}

std::int64_t GroupValue::modulus() const {
  if (auto p = std::get_if<Mod>(&rep_)) return p->m;
  throw Error(ErrorKind::UnsupportedOperation, to_string() + " is not a residue");
}

bool GroupValue::is_zero() const noexcept {
  switch (rep_.index()) {
    case 0: return std::get<0>(rep_) == 0;
    case 1:
    case 2: return false;  // canonical forms of zero are the small int
    case 3: {
      for (auto c : *std::get<3>(rep_)) {
        if (c != 0) return false;
      }
      return true;
    }
    default: return std::get<Mod>(rep_).r == 0;
  }
}

bool GroupValue::is_unit() const {
  switch (kind()) {
    case Kind::Int:
    case Kind::Rat: return !is_zero();
    case Kind::IntVec: return false;
    case Kind::IntMod: {
      const auto& m = std::get<Mod>(rep_);
      return std::gcd(m.r, m.m) == 1;
    }
  }
  return false;
}

double log_of(const BigInt& x) {
  if (x <= 0) throw Error(ErrorKind::InvalidArgument, "log of a non-positive integer");
  const unsigned msb = boost::multiprecision::msb(x);
  if (msb < 64) return std::log(static_cast<double>(static_cast<std::uint64_t>(x)));
  const unsigned shift = msb - 63;
  const auto top = static_cast<std::uint64_t>(x >> shift);
  return std::log(static_cast<double>(top)) + shift * std::log(2.0);
}

double GroupValue::log_abs() const {
  if (is_zero()) throw Error(ErrorKind::NonInvertibleDivisor, "log|0| is undefined");
  switch (rep_.index()) {
    case 0: {
      const auto v = std::get<0>(rep_);
      return std::log(std::fabs(static_cast<double>(v)));
    }
    case 1: return log_of(boost::multiprecision::abs(*std::get<1>(rep_)));
    case 2: {
      const auto& q = *std::get<2>(rep_);
      return log_of(boost::multiprecision::abs(boost::multiprecision::numerator(q))) -
             log_of(boost::multiprecision::denominator(q));
    }
    default: throw Error(ErrorKind::UnsupportedOperation, "log|.| needs a numeric value");
  }
}

std::string GroupValue::to_string() const {
  switch (rep_.index()) {
    case 0: return std::to_string(std::get<0>(rep_));
    case 1: return std::get<1>(rep_)->str();
    case 2: return std::get<2>(rep_)->str();
    case 3: {
      std::ostringstream out;
      out << '(';
      const auto& c = *std::get<3>(rep_);
      for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
      out << ')';
      return out.str();
    }
    default: return std::to_string(std::get<Mod>(rep_).r);
  }
}

std::size_t GroupValue::hash() const noexcept {
  switch (rep_.index()) {
    case 0: return mix64(static_cast<std::uint64_t>(std::get<0>(rep_)));
    case 1: return combine(1, boost::multiprecision::hash_value(*std::get<1>(rep_)));
    case 2: {
      const auto& q = *std::get<2>(rep_);
      return combine(combine(2, boost::multiprecision::hash_value(boost::multiprecision::numerator(q))),
                     boost::multiprecision::hash_value(boost::multiprecision::denominator(q)));
    }
    case 3: {
      std::size_t h = 3;
      for (auto c : *std::get<3>(rep_)) h = combine(h, static_cast<std::size_t>(c));
      return h;
    }
    default: {
      const auto& m = std::get<Mod>(rep_);
      return combine(combine(4, static_cast<std::size_t>(m.m)), static_cast<std::size_t>(m.r));
    }
  }
}

bool operator==(const GroupValue& a, const GroupValue& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  switch (a.rep_.index()) {
    case 0: return std::get<0>(a.rep_) == std::get<0>(b.rep_);
    case 1: return *std::get<1>(a.rep_) == *std::get<1>(b.rep_);
    case 2: return *std::get<2>(a.rep_) == *std::get<2>(b.rep_);
    case 3: return *std::get<3>(a.rep_) == *std::get<3>(b.rep_);
    default: {
      const auto& x = std::get<GroupValue::Mod>(a.rep_);
      const auto& y = std::get<GroupValue::Mod>(b.rep_);
      return x.r == y.r && x.m == y.m;
    }
  }
}

std::strong_ordering operator<=>(const GroupValue& a, const GroupValue& b) {
  const auto fa = a.family();
  const auto fb = b.family();
  if (fa.tag != fb.tag) return fa.tag <=> fb.tag;
  switch (fa.tag) {
    case GroupValue::Family::Tag::Numeric: {
      if (a.is_small_int() && b.is_small_int()) return a.small_int() <=> b.small_int();
      if (a.kind() == GroupValue::Kind::Int && b.kind() == GroupValue::Kind::Int) {
        const BigInt x = a.as_integer();
        const BigInt y = b.as_integer();
        return x < y ? std::strong_ordering::less
                     : (y < x ? std::strong_ordering::greater : std::strong_ordering::equal);
      }
      const Rational x = a.as_rational();
      const Rational y = b.as_rational();
      return x < y ? std::strong_ordering::less
                   : (y < x ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    case GroupValue::Family::Tag::Vector: {
      const auto& x = a.components();
      const auto& y = b.components();
      if (x.size() != y.size()) return x.size() <=> y.size();
      return x <=> y;
    }
    case GroupValue::Family::Tag::Modular: {
      if (fa.parameter != fb.parameter) return fa.parameter <=> fb.parameter;
      return a.residue_value() <=> b.residue_value();
    }
  }
  return std::strong_ordering::equal;
}

GroupValue apply(BinaryOp op, const GroupValue& a, const GroupValue& b) {
  if (a.family() != b.family()) mixed(a, b);
  switch (a.family().tag) {
    case GroupValue::Family::Tag::Numeric: return numeric_apply(op, a, b);
    case GroupValue::Family::Tag::Vector: {
      if (op == BinaryOp::Mul || op == BinaryOp::Div) {
        throw Error(ErrorKind::UnsupportedOperation,
                    std::string("operator ") + to_string(op) + " is not defined on Z^d");
      }
      const auto& x = a.components();
      const auto& y = b.components();
      std::vector<std::int64_t> out(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        std::int64_t r = 0;
        const bool overflow = op == BinaryOp::Add ? __builtin_add_overflow(x[i], y[i], &r)
                                                  : __builtin_sub_overflow(x[i], y[i], &r);
        out[i] = checked(overflow, r);
      }
      return GroupValue::vector(std::move(out));
    }
    case GroupValue::Family::Tag::Modular: {
      const __int128 m = a.modulus();
      const __int128 x = a.residue_value();
      __int128 y = b.residue_value();
      __int128 r = 0;
      switch (op) {
        case BinaryOp::Add: r = x + y; break;
        case BinaryOp::Sub: r = x - y; break;
        case BinaryOp::Mul: r = x * y; break;
        case BinaryOp::Div: {
          auto inv = mod_inverse(b.residue_value(), b.modulus());
          if (!inv) {
            throw Error(ErrorKind::NonInvertibleDivisor,
                        b.to_string() + " is not a unit mod " + std::to_string(b.modulus()));
          }
          r = x * *inv;
          break;
        }
      }
      r %= m;
      if (r < 0) r += m;
      return GroupValue::residue(static_cast<std::int64_t>(r), a.modulus());
    }
  }
  return {};
}

GroupValue negate(const GroupValue& v) {
  switch (v.kind()) {
    case GroupValue::Kind::Int:
      if (v.is_small_int() && v.small_int() != kInt64Min) return GroupValue::integer(-v.small_int());
      return GroupValue::integer(BigInt(-v.as_integer()));
    case GroupValue::Kind::Rat: return GroupValue::rational(Rational(-v.as_rational()));
    case GroupValue::Kind::IntVec: {
      std::vector<std::int64_t> out = v.components();
      for (auto& c : out) c = checked(c == kInt64Min, -c);
      return GroupValue::vector(std::move(out));
    }
    case GroupValue::Kind::IntMod:
      return GroupValue::residue(-v.residue_value(), v.modulus());
  }
  return v;
}

GroupValue coerce_literal(const BigInt& literal, const GroupValue& like) {
  switch (like.family().tag) {
    case GroupValue::Family::Tag::Numeric: return GroupValue::integer(literal);
    case GroupValue::Family::Tag::Modular: return GroupValue::residue(literal, like.modulus());
    case GroupValue::Family::Tag::Vector: break;
  }
  throw Error(ErrorKind::MixedGroup, "integer literal " + literal.str() + " has no meaning in Z^d");
}

}  // namespace entadd
