#pragma once

#include "entadd/group_value.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace entadd {

inline constexpr std::size_t kDefaultSupportCap = 50'000'000;

// Neumaier-compensated accumulator; used for every entropy sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// -sum (w/T) log(w/T) for positive integer weights with total T.
double entropy_of_weights(const std::vector<BigInt>& weights, const BigInt& total);

// Finitely supported probability distribution with exact rational masses.
// Stored as a common-denominator form: atom i has probability
// weight(i) / total(), weights are positive and gcd(weights, total) = 1.
// Atoms are sorted by the canonical value order.
class FiniteDist {
 public:
  // Duplicate values are merged, zero weights dropped, the result reduced.
  static FiniteDist from_weights(std::vector<std::pair<GroupValue, BigInt>> atoms);
  // Probabilities must be positive (zeros dropped) and sum to exactly 1.
  static FiniteDist from_probabilities(const std::vector<std::pair<GroupValue, Rational>>& atoms);
  static FiniteDist uniform(const std::vector<GroupValue>& support);
  static FiniteDist point_mass(const GroupValue& v);

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<GroupValue>& values() const noexcept { return values_; }
  const std::vector<BigInt>& weights() const noexcept { return weights_; }
  const GroupValue& value(std::size_t i) const { return values_[i]; }
  const BigInt& weight(std::size_t i) const { return weights_[i]; }
  const BigInt& total() const noexcept { return total_; }

  Rational prob(std::size_t i) const { return Rational(weights_[i], total_); }
  double prob_double(std::size_t i) const;
  // Probability of `v`, zero when absent.
  Rational prob_of(const GroupValue& v) const;
  std::optional<std::size_t> find(const GroupValue& v) const;

  GroupValue::Family family() const { return values_.front().family(); }
  bool is_additive() const;  // Int (integral values) or IntVec or IntMod
  bool all_units() const;

  double entropy() const;
  double collision_probability() const;  // sum of P(a)^2, rounded
  Rational collision_probability_exact() const;

  friend bool operator==(const FiniteDist& a, const FiniteDist& b) {
    return a.values_ == b.values_ && a.weights_ == b.weights_ && a.total_ == b.total_;
  }

 private:
  FiniteDist() = default;

  std::vector<GroupValue> values_;
  std::vector<BigInt> weights_;
  BigInt total_;
};

// Exact law of op(X, Y) for independent X ~ d1, Y ~ d2.
FiniteDist combine_independent(const FiniteDist& d1, const FiniteDist& d2, BinaryOp op,
                               std::size_t cap = kDefaultSupportCap);

// Raw pushforward of weighted atoms under op, without normalisation. Outputs
// are sorted by value; counts are products of input weights summed over
// colliding pairs. Int supports use dense or hashed int64 tables; big
// integers use a representative table so values are never duplicated.
struct ConvolutionTable {
  std::vector<GroupValue> values;
  std::vector<BigInt> counts;
};

ConvolutionTable convolve(const std::vector<GroupValue>& v1, const std::vector<BigInt>& w1,
                          const std::vector<GroupValue>& v2, const std::vector<BigInt>& w2, BinaryOp op,
                          std::size_t cap = kDefaultSupportCap);

// Summary statistics of the same pushforward without materialising values;
// this is what large sumset/product-set computations use.
struct ConvolutionSummary {
  std::size_t support = 0;
  double entropy = 0.0;  // of counts / (sum of counts)
  BigInt sum_of_squares;  // sum over outputs of count^2
  BigInt max_count;
};

ConvolutionSummary summarize_convolution(const std::vector<GroupValue>& v1, const std::vector<BigInt>& w1,
                                         const std::vector<GroupValue>& v2, const std::vector<BigInt>& w2,
                                         BinaryOp op, std::size_t cap = kDefaultSupportCap);

inline double combine_entropy(const FiniteDist& d1, const FiniteDist& d2, BinaryOp op,
                              std::size_t cap = kDefaultSupportCap) {
  return summarize_convolution(d1.values(), d1.weights(), d2.values(), d2.weights(), op, cap).entropy;
}

}  // namespace entadd
