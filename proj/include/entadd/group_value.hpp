#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace entadd {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class BinaryOp { Add, Sub, Mul, Div };

const char* to_string(BinaryOp op) noexcept;

// A value in one of the supported groups/rings:
//   Int    - arbitrary-precision integer (stored inline when it fits in int64)
//   Rat    - non-integral rational; only produced by dividing Int values
//   IntVec - element of Z^d
//   IntMod - residue in Z_m, always reduced into [0, m)
// Representations are canonical, so equality and hashing are structural.
class GroupValue {
 public:
  enum class Kind : std::uint8_t { Int, Rat, IntVec, IntMod };

  // Values of different families never combine. Int and Rat share the
  // numeric family (both live in Q).
  struct Family {
    enum class Tag : std::uint8_t { Numeric, Vector, Modular } tag;
    std::int64_t parameter;  // dimension for Vector, modulus for Modular

    friend bool operator==(const Family&, const Family&) = default;
    std::string to_string() const;
  };

  GroupValue() : rep_(std::int64_t{0}) {}

  static GroupValue integer(std::int64_t v) { return GroupValue(Rep(v)); }
  static GroupValue integer(const BigInt& v);
  static GroupValue rational(const Rational& v);
  static GroupValue vector(std::vector<std::int64_t> components);
  static GroupValue residue(std::int64_t r, std::int64_t modulus);
  static GroupValue residue(const BigInt& r, std::int64_t modulus);

  Kind kind() const noexcept;
  Family family() const noexcept;
  bool is_numeric() const noexcept { return kind() == Kind::Int || kind() == Kind::Rat; }
  bool is_small_int() const noexcept { return std::holds_alternative<std::int64_t>(rep_); }

  std::int64_t small_int() const { return std::get<std::int64_t>(rep_); }
  BigInt as_integer() const;
  Rational as_rational() const;
  const std::vector<std::int64_t>& components() const;
  std::int64_t residue_value() const;
  std::int64_t modulus() const;

  bool is_zero() const noexcept;
  // Invertible under the multiplication used by BinaryOp::Div.
  bool is_unit() const;
  // log|v| for numeric values.
  double log_abs() const;

  std::string to_string() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const GroupValue& a, const GroupValue& b);
  friend std::strong_ordering operator<=>(const GroupValue& a, const GroupValue& b);

 private:
  struct Mod {
    std::int64_t r;
    std::int64_t m;
  };
  using Rep = std::variant<std::int64_t, std::shared_ptr<const BigInt>,
                           std::shared_ptr<const Rational>,
                           std::shared_ptr<const std::vector<std::int64_t>>, Mod>;

  explicit GroupValue(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

struct GroupValueHash {
  std::size_t operator()(const GroupValue& v) const noexcept { return v.hash(); }
};

GroupValue apply(BinaryOp op, const GroupValue& a, const GroupValue& b);
GroupValue negate(const GroupValue& v);

// Interprets an integer literal in the group of `like` (Z_m literals are
// reduced; Z^d has no integer literals).
GroupValue coerce_literal(const BigInt& literal, const GroupValue& like);

inline GroupValue operator+(const GroupValue& a, const GroupValue& b) { return apply(BinaryOp::Add, a, b); }
inline GroupValue operator-(const GroupValue& a, const GroupValue& b) { return apply(BinaryOp::Sub, a, b); }
inline GroupValue operator*(const GroupValue& a, const GroupValue& b) { return apply(BinaryOp::Mul, a, b); }
inline GroupValue operator/(const GroupValue& a, const GroupValue& b) { return apply(BinaryOp::Div, a, b); }
inline GroupValue operator-(const GroupValue& v) { return negate(v); }

// Natural log of a positive big integer, accurate to double precision.
double log_of(const BigInt& x);

}  // namespace entadd
