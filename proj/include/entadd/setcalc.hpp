#pragma once

#include "entadd/group_value.hpp"

#include <optional>
#include <string>
#include <vector>

namespace entadd {

inline constexpr std::size_t kMaxSetSize = 1'000'000;

// Nonempty finite set of values from a single group, kept sorted.
class FiniteSet {
 public:
  static FiniteSet from(std::vector<GroupValue> elements);

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<GroupValue>& elements() const noexcept { return elements_; }
  bool contains(const GroupValue& v) const;

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

 private:
  std::vector<GroupValue> elements_;
};

FiniteSet set_combine(const FiniteSet& a, const FiniteSet& b, BinaryOp op);
// |A op B| without materialising the result.
std::size_t set_combine_size(const FiniteSet& a, const FiniteSet& b, BinaryOp op);

// E(A,B) = #{(a1,a2,b1,b2): a1+b1 = a2+b2} = sum_s r(s)^2 with r counting
// ordered pairs.
BigInt set_energy(const FiniteSet& a, const FiniteSet& b);

struct SetCheck {
  std::string name;
  std::string statement;
  BigInt lhs;  // both sides as exact integers after clearing denominators
  BigInt rhs;
  double slack = 0.0;  // log(rhs) - log(lhs), nats
  bool holds = false;  // lhs <= rhs, exact
};

struct SetCheckReport {
  std::vector<SetCheck> checks;
  bool all_hold() const;
};

// Evaluates the classical sumset inequalities on (A, B, C); C defaults to A.
SetCheckReport set_checks(const FiniteSet& a, const FiniteSet& b, const std::optional<FiniteSet>& c = std::nullopt);

}  // namespace entadd
