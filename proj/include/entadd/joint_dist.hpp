#pragma once

#include "entadd/finite_dist.hpp"
#include "entadd/rv_expr.hpp"

#include <string>
#include <utility>
#include <vector>

namespace entadd {

// Sparse joint law over named coordinates, same common-denominator scheme as
// FiniteDist. Tuples are stored row-major and sorted lexicographically.
class JointDist {
 public:
  using Tuple = std::vector<GroupValue>;

  static JointDist from_weights(std::vector<std::string> coords, std::vector<std::pair<Tuple, BigInt>> atoms);
  static JointDist from_probabilities(std::vector<std::string> coords,
                                      const std::vector<std::pair<Tuple, Rational>>& atoms);

  const std::vector<std::string>& coords() const noexcept { return coords_; }
  std::size_t arity() const noexcept { return coords_.size(); }
  std::size_t size() const noexcept { return weights_.size(); }
  const GroupValue* tuple(std::size_t i) const { return data_.data() + i * arity(); }
  Tuple tuple_copy(std::size_t i) const { return Tuple(tuple(i), tuple(i) + arity()); }
  const BigInt& weight(std::size_t i) const { return weights_[i]; }
  const std::vector<BigInt>& weights() const noexcept { return weights_; }
  const BigInt& total() const noexcept { return total_; }
  Rational prob(std::size_t i) const { return Rational(weights_[i], total_); }

  bool has(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;  // UnknownCoordinate

  JointDist marginal(const std::vector<std::string>& names) const;
  FiniteDist marginal_dist(const std::string& name) const;
  // Entropy of the sub-vector of the given coordinates (empty set -> 0).
  double entropy(const std::vector<std::string>& names) const;

  friend bool operator==(const JointDist& a, const JointDist& b) {
    return a.coords_ == b.coords_ && a.data_ == b.data_ && a.weights_ == b.weights_ && a.total_ == b.total_;
  }

 private:
  JointDist() = default;
  std::vector<BigInt> grouped_weights(const std::vector<std::size_t>& idx) const;

  std::vector<std::string> coords_;
  std::vector<GroupValue> data_;
  std::vector<BigInt> weights_;
  BigInt total_;
};

JointDist join_independent(const std::vector<std::pair<std::string, FiniteDist>>& bindings,
                           std::size_t cap = kDefaultSupportCap);
// Product measure of two joints over disjoint coordinate sets.
JointDist product(const JointDist& a, const JointDist& b, std::size_t cap = kDefaultSupportCap);
JointDist pushforward(const JointDist& j, const std::vector<std::pair<std::string, RvExprPtr>>& exprs,
                      std::size_t cap = kDefaultSupportCap);

double joint_entropy(const JointDist& j, const std::vector<std::string>& names);
double conditional_entropy(const JointDist& j, const std::vector<std::string>& a, const std::vector<std::string>& b);
double mutual_information(const JointDist& j, const std::vector<std::string>& a, const std::vector<std::string>& b);
double conditional_mutual_information(const JointDist& j, const std::vector<std::string>& a,
                                      const std::vector<std::string>& b, const std::vector<std::string>& c);

// (X1,Y1,X2,Y2,S): two copies of (X,Y) conditionally independent given
// S = X+Y, realised on the event X1+Y1 = X2+Y2 = S.
JointDist cond_indep_copies_given_sum(const JointDist& j);

}  // namespace entadd
