#include "entadd/finite_dist.hpp"

#include "entadd/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace entadd {

namespace mp = boost::multiprecision;

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

namespace {

constexpr unsigned __int128 kU64Limit = static_cast<unsigned __int128>(1) << 64;

bool fits_u64(const BigInt& v) { return v >= 0 && mp::msb(v | 1) < 64; }

double log_weight(const BigInt& w) {
  if (fits_u64(w)) return std::log(static_cast<double>(static_cast<std::uint64_t>(w)));
  return log_of(w);
}

double ratio_double(const BigInt& num, const BigInt& den) {
  if (fits_u64(num) && fits_u64(den)) {
    return static_cast<double>(static_cast<std::uint64_t>(num)) /
           static_cast<double>(static_cast<std::uint64_t>(den));
  }
  return std::exp(log_weight(num) - log_weight(den));
}

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw Error(ErrorKind::SupportOverflow,
                "result support exceeds the cap of " + std::to_string(cap) + " atoms");
  }
}

// Entropy/summary accumulation over a stream of counts.
struct SummaryAccumulator {
  explicit SummaryAccumulator(const BigInt& total) : total(total) {
    total_is_small = fits_u64(total);
    log_total = log_weight(total);
    if (total_is_small) total64 = static_cast<std::uint64_t>(total);
  }

  void add(std::uint64_t c) {
    ++support;
    const double p = static_cast<double>(c) / static_cast<double>(total64 ? total64 : 1);
    if (total_is_small) {
      entropy.add(p * (log_total - std::log(static_cast<double>(c))));
    } else {
      add(BigInt(c));
      --support;
      return;
    }
    const unsigned __int128 sq = static_cast<unsigned __int128>(c) * c;
    if (__builtin_add_overflow(squares_acc, sq, &squares_acc)) {
      flush_squares();
      squares_acc = sq;
    }
    if (c > max_small) max_small = c;
  }

  void add(const BigInt& c) {
    ++support;
    entropy.add(ratio_double(c, total) * (log_total - log_weight(c)));
    squares_big += c * c;
    if (c > max_big) max_big = c;
  }

  void flush_squares() {
    BigInt v = static_cast<std::uint64_t>(squares_acc >> 64);
    v <<= 64;
    v += static_cast<std::uint64_t>(squares_acc);
    squares_big += v;
    squares_acc = 0;
  }

  ConvolutionSummary finish() {
    flush_squares();
    ConvolutionSummary s;
    s.support = support;
    s.entropy = std::max(0.0, entropy.value());
    s.sum_of_squares = squares_big;
    s.max_count = std::max(max_big, BigInt(max_small));
    return s;
  }

  BigInt total;
  bool total_is_small = false;
  std::uint64_t total64 = 0;
  double log_total = 0.0;
  std::size_t support = 0;
  CompensatedSum entropy;
  unsigned __int128 squares_acc = 0;
  BigInt squares_big = 0;
  std::uint64_t max_small = 0;
  BigInt max_big = 0;
};

struct IntRange {
  __int128 lo;
  __int128 hi;
};

IntRange output_range(BinaryOp op, std::int64_t min1, std::int64_t max1, std::int64_t min2, std::int64_t max2) {
  const __int128 a = min1, b = max1, c = min2, d = max2;
  switch (op) {
    case BinaryOp::Add: return {a + c, b + d};
    case BinaryOp::Sub: return {a - d, b - c};
    default: {
      const __int128 p[4] = {a * c, a * d, b * c, b * d};
      return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
    }
  }
}

inline std::int64_t apply_small(BinaryOp op, std::int64_t x, std::int64_t y) {
  switch (op) {
    case BinaryOp::Add: return x + y;
    case BinaryOp::Sub: return x - y;
    default: return x * y;
  }
}

inline void apply_big(BinaryOp op, const BigInt& x, const BigInt& y, BigInt& out) {
  out = x;
  switch (op) {
    case BinaryOp::Add: out += y; break;
    case BinaryOp::Sub: out -= y; break;
    default: out *= y; break;
  }
}

// Small-int path: all values int64, op in {+,-,*}, outputs fit in int64.
template <class C, class Visit>
void small_int_path(const std::vector<std::int64_t>& x, const std::vector<C>& wx, const std::vector<std::int64_t>& y,
                    const std::vector<C>& wy, BinaryOp op, IntRange range, std::size_t cap, Visit&& visit) {
  const unsigned __int128 width = static_cast<unsigned __int128>(range.hi - range.lo) + 1;
  const unsigned __int128 pairs = static_cast<unsigned __int128>(x.size()) * y.size();
  const unsigned __int128 dense_limit = std::is_same_v<C, std::uint64_t> ? (1u << 27) : (1u << 22);
  if (width <= dense_limit && width <= 16 * pairs + 4096) {
    std::vector<C> table(static_cast<std::size_t>(width), C(0));
    const std::int64_t lo = static_cast<std::int64_t>(range.lo);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const C& a = wx[i];
      for (std::size_t j = 0; j < y.size(); ++j) {
        table[static_cast<std::size_t>(apply_small(op, x[i], y[j]) - lo)] += a * wy[j];
      }
    }
    std::size_t nonzero = 0;
    for (const auto& c : table) nonzero += (c != 0);
    check_cap(nonzero, cap);
    for (std::size_t k = 0; k < table.size(); ++k) {
      if (table[k] != 0) {
        const std::int64_t v = lo + static_cast<std::int64_t>(k);
        visit([v] { return GroupValue::integer(v); }, table[k]);
      }
    }
    return;
  }
  std::unordered_map<std::int64_t, C> table;
  table.reserve(static_cast<std::size_t>(std::min<unsigned __int128>(pairs, cap)));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      table[apply_small(op, x[i], y[j])] += wx[i] * wy[j];
    }
    check_cap(table.size(), cap);
  }
  std::vector<std::int64_t> keys;
  keys.reserve(table.size());
  for (const auto& kv : table) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end());
  for (auto k : keys) visit([k] { return GroupValue::integer(k); }, table[k]);
}

// Big-integer path: outputs identified by a representative input pair, so
// no output value is ever stored; equality is always verified exactly.
template <class C, class Visit>
void big_int_path(const std::vector<BigInt>& x, const std::vector<C>& wx, const std::vector<BigInt>& y,
                  const std::vector<C>& wy, BinaryOp op, std::size_t cap, Visit&& visit) {
  struct Slot {
    std::uint64_t hash;
    std::uint32_t i;
    std::uint32_t j;
    std::uint32_t index;  // into counts; UINT32_MAX = empty
  };
  constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();
  std::vector<Slot> slots(1 << 12, Slot{0, 0, 0, kEmpty});
  std::vector<C> counts;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> reps;
  BigInt tmp, other;

  auto rehash = [&] {
    std::vector<Slot> bigger(slots.size() * 2, Slot{0, 0, 0, kEmpty});
    const std::size_t mask = bigger.size() - 1;
    for (const auto& s : slots) {
      if (s.index == kEmpty) continue;
      std::size_t k = s.hash & mask;
      while (bigger[k].index != kEmpty) k = (k + 1) & mask;
      bigger[k] = s;
    }
    slots.swap(bigger);
  };

  for (std::uint32_t i = 0; i < x.size(); ++i) {
    for (std::uint32_t j = 0; j < y.size(); ++j) {
      apply_big(op, x[i], y[j], tmp);
      const std::uint64_t h = static_cast<std::uint64_t>(mp::hash_value(tmp)) * 0x9e3779b97f4a7c15ULL;
      const std::size_t mask = slots.size() - 1;
      std::size_t k = (h >> 20) & mask;
      for (;;) {
        Slot& s = slots[k];
        if (s.index == kEmpty) {
          s = Slot{h >> 20, i, j, static_cast<std::uint32_t>(counts.size())};
          counts.push_back(wx[i] * wy[j]);
          reps.emplace_back(i, j);
          check_cap(counts.size(), cap);
          if (counts.size() * 2 > slots.size()) rehash();
          break;
        }
        if (s.hash == (h >> 20)) {
          apply_big(op, x[s.i], y[s.j], other);
          if (other == tmp) {
            counts[s.index] += wx[i] * wy[j];
            break;
          }
        }
        k = (k + 1) & mask;
      }
    }
  }
  // Emit in value order.
  std::vector<BigInt> values(reps.size());
  for (std::size_t r = 0; r < reps.size(); ++r) apply_big(op, x[reps[r].first], y[reps[r].second], values[r]);
  std::vector<std::uint32_t> order(reps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return values[a] < values[b]; });
  for (auto r : order) {
    visit([&values, r] { return GroupValue::integer(values[r]); }, counts[r]);
  }
}

template <class C, class Visit>
void generic_path(const std::vector<GroupValue>& x, const std::vector<C>& wx, const std::vector<GroupValue>& y,
                  const std::vector<C>& wy, BinaryOp op, std::size_t cap, Visit&& visit) {
  std::unordered_map<GroupValue, C, GroupValueHash> table;
  table.reserve(std::min(x.size() * y.size(), cap));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      table[apply(op, x[i], y[j])] += wx[i] * wy[j];
    }
    check_cap(table.size(), cap);
  }
  std::vector<std::pair<GroupValue, C>> items(table.begin(), table.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& kv : items) visit([&kv] { return kv.first; }, kv.second);
}

template <class C, class Visit>
void dispatch_typed(const std::vector<GroupValue>& v1, const std::vector<C>& w1, const std::vector<GroupValue>& v2,
                    const std::vector<C>& w2, BinaryOp op, std::size_t cap, Visit&& visit) {
  const bool ring_op = op != BinaryOp::Div;
  bool all_small = ring_op, all_int = ring_op;
  for (const auto* vs : {&v1, &v2}) {
    for (const auto& v : *vs) {
      all_small = all_small && v.is_small_int();
      all_int = all_int && v.kind() == GroupValue::Kind::Int;
    }
  }
  if (all_small) {
    std::vector<std::int64_t> x(v1.size()), y(v2.size());
    for (std::size_t i = 0; i < v1.size(); ++i) x[i] = v1[i].small_int();
    for (std::size_t i = 0; i < v2.size(); ++i) y[i] = v2[i].small_int();
    const auto [min1, max1] = std::minmax_element(x.begin(), x.end());
    const auto [min2, max2] = std::minmax_element(y.begin(), y.end());
    const IntRange range = output_range(op, *min1, *max1, *min2, *max2);
    if (range.lo >= std::numeric_limits<std::int64_t>::min() && range.hi <= std::numeric_limits<std::int64_t>::max()) {
      small_int_path(x, w1, y, w2, op, range, cap, visit);
      return;
    }
  }
  if (all_int && v1.size() < (1u << 31) && v2.size() < (1u << 31)) {
    std::vector<BigInt> x(v1.size()), y(v2.size());
    for (std::size_t i = 0; i < v1.size(); ++i) x[i] = v1[i].as_integer();
    for (std::size_t i = 0; i < v2.size(); ++i) y[i] = v2[i].as_integer();
    big_int_path(x, w1, y, w2, op, cap, visit);
    return;
  }
  generic_path(v1, w1, v2, w2, op, cap, visit);
}

void validate_operands(const std::vector<GroupValue>& v1, const std::vector<GroupValue>& v2, BinaryOp op) {
  if (v1.empty() || v2.empty()) throw Error(ErrorKind::InvalidArgument, "empty operand");
  const auto f = v1.front().family();
  for (const auto* vs : {&v1, &v2}) {
    for (const auto& v : *vs) {
      if (v.family() != f) {
        throw Error(ErrorKind::MixedGroup, "operands mix " + f.to_string() + " and " + v.family().to_string());
      }
    }
  }
  if (op == BinaryOp::Div && f.tag != GroupValue::Family::Tag::Vector) {
    for (const auto& v : v2) {
      if (!v.is_unit()) throw Error(ErrorKind::NonInvertibleDivisor, v.to_string() + " is not invertible");
    }
  }
}

BigInt sum_of(const std::vector<BigInt>& w) {
  BigInt s = 0;
  for (const auto& x : w) s += x;
  return s;
}

// Runs the convolution with u64 counts when the grand total fits, else BigInt.
template <class Visit>
void dispatch(const std::vector<GroupValue>& v1, const std::vector<BigInt>& w1, const std::vector<GroupValue>& v2,
              const std::vector<BigInt>& w2, BinaryOp op, std::size_t cap, const BigInt& total, Visit&& visit) {
  validate_operands(v1, v2, op);
  if (fits_u64(total)) {
    std::vector<std::uint64_t> a(w1.size()), b(w2.size());
    for (std::size_t i = 0; i < w1.size(); ++i) a[i] = static_cast<std::uint64_t>(w1[i]);
    for (std::size_t i = 0; i < w2.size(); ++i) b[i] = static_cast<std::uint64_t>(w2[i]);
    dispatch_typed(v1, a, v2, b, op, cap, visit);
  } else {
    dispatch_typed(v1, w1, v2, w2, op, cap, visit);
  }
}

}  // namespace

double entropy_of_weights(const std::vector<BigInt>& weights, const BigInt& total) {
  SummaryAccumulator acc(total);
  for (const auto& w : weights) {
    if (acc.total_is_small) {
      acc.add(static_cast<std::uint64_t>(w));
    } else {
      acc.add(w);
    }
  }
  return acc.finish().entropy;
}

ConvolutionTable convolve(const std::vector<GroupValue>& v1, const std::vector<BigInt>& w1,
                          const std::vector<GroupValue>& v2, const std::vector<BigInt>& w2, BinaryOp op,
                          std::size_t cap) {
  ConvolutionTable out;
  const BigInt total = sum_of(w1) * sum_of(w2);
  dispatch(v1, w1, v2, w2, op, cap, total, [&](auto&& make_value, const auto& count) {
    out.values.push_back(make_value());
    out.counts.emplace_back(count);
  });
  return out;
}

ConvolutionSummary summarize_convolution(const std::vector<GroupValue>& v1, const std::vector<BigInt>& w1,
                                         const std::vector<GroupValue>& v2, const std::vector<BigInt>& w2,
                                         BinaryOp op, std::size_t cap) {
  const BigInt total = sum_of(w1) * sum_of(w2);
  SummaryAccumulator acc(total);
  dispatch(v1, w1, v2, w2, op, cap, total, [&](auto&&, const auto& count) { acc.add(count); });
  return acc.finish();
}

FiniteDist FiniteDist::from_weights(std::vector<std::pair<GroupValue, BigInt>> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  FiniteDist d;
  for (auto& [v, w] : atoms) {
    if (w < 0) throw Error(ErrorKind::InvalidDistribution, "negative weight at " + v.to_string());
    if (w == 0) continue;
    if (!d.values_.empty() && d.values_.back() == v) {
      d.weights_.back() += w;
    } else {
      if (!d.values_.empty() && d.values_.back().family() != v.family()) {
        throw Error(ErrorKind::MixedGroup, "distribution mixes " + d.values_.back().family().to_string() +
                                               " and " + v.family().to_string());
      }
      d.values_.push_back(std::move(v));
      d.weights_.push_back(std::move(w));
    }
  }
  if (d.values_.empty()) throw Error(ErrorKind::InvalidDistribution, "empty support");
  BigInt g = 0;
  for (const auto& w : d.weights_) {
    g = mp::gcd(g, w);
    if (g == 1) break;
  }
  if (g != 1) {
    for (auto& w : d.weights_) w /= g;
  }
  d.total_ = sum_of(d.weights_);
  return d;
}

FiniteDist FiniteDist::from_probabilities(const std::vector<std::pair<GroupValue, Rational>>& atoms) {
  Rational sum = 0;
  BigInt lcm = 1;
  for (const auto& [v, p] : atoms) {
    if (p < 0) throw Error(ErrorKind::InvalidDistribution, "negative probability at " + v.to_string());
    sum += p;
    lcm = mp::lcm(lcm, mp::denominator(p));
  }
  if (sum != 1) {
    throw Error(ErrorKind::InvalidDistribution,
                "probabilities sum to " + sum.str() + " (residual " + Rational(1 - sum).str() + ")");
  }
  std::vector<std::pair<GroupValue, BigInt>> w;
  w.reserve(atoms.size());
  for (const auto& [v, p] : atoms) w.emplace_back(v, mp::numerator(p) * (lcm / mp::denominator(p)));
  return from_weights(std::move(w));
}

FiniteDist FiniteDist::uniform(const std::vector<GroupValue>& support) {
  std::vector<std::pair<GroupValue, BigInt>> w;
  w.reserve(support.size());
  for (const auto& v : support) w.emplace_back(v, BigInt(1));
  auto d = from_weights(std::move(w));
  if (d.size() != support.size()) throw Error(ErrorKind::InvalidArgument, "uniform support has duplicates");
  return d;
}

FiniteDist FiniteDist::point_mass(const GroupValue& v) { return from_weights({{v, BigInt(1)}}); }

double FiniteDist::prob_double(std::size_t i) const { return ratio_double(weights_[i], total_); }

std::optional<std::size_t> FiniteDist::find(const GroupValue& v) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), v);
  if (it == values_.end() || !(*it == v)) return std::nullopt;
  return static_cast<std::size_t>(it - values_.begin());
}

Rational FiniteDist::prob_of(const GroupValue& v) const {
  if (auto i = find(v)) return prob(*i);
  return Rational(0);
}

bool FiniteDist::is_additive() const {
  for (const auto& v : values_) {
    if (v.kind() == GroupValue::Kind::Rat) return false;
  }
  return true;
}

bool FiniteDist::all_units() const {
  for (const auto& v : values_) {
    if (!v.is_unit()) return false;
  }
  return true;
}

double FiniteDist::entropy() const { return entropy_of_weights(weights_, total_); }

Rational FiniteDist::collision_probability_exact() const {
  BigInt s = 0;
  for (const auto& w : weights_) s += w * w;
  return Rational(s, BigInt(total_ * total_));
}

double FiniteDist::collision_probability() const {
  BigInt s = 0;
  for (const auto& w : weights_) s += w * w;
  return ratio_double(s, total_ * total_);
}

FiniteDist combine_independent(const FiniteDist& d1, const FiniteDist& d2, BinaryOp op, std::size_t cap) {
  auto table = convolve(d1.values(), d1.weights(), d2.values(), d2.weights(), op, cap);
  std::vector<std::pair<GroupValue, BigInt>> atoms;
  atoms.reserve(table.values.size());
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    atoms.emplace_back(std::move(table.values[i]), std::move(table.counts[i]));
  }
  return FiniteDist::from_weights(std::move(atoms));
}

}  // namespace entadd
