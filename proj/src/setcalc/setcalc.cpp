#include "entadd/setcalc.hpp"

#include "entadd/error.hpp"
#include "entadd/finite_dist.hpp"

#include <algorithm>
#include <limits>

namespace entadd {

namespace {

std::vector<BigInt> ones(std::size_t n) { return std::vector<BigInt>(n, BigInt(1)); }

double log_big(const BigInt& v) { return v > 0 ? log_of(v) : -std::numeric_limits<double>::infinity(); }

SetCheck make_check(std::string name, std::string statement, BigInt lhs, BigInt rhs) {
  SetCheck c;
  c.name = std::move(name);
  c.statement = std::move(statement);
  c.holds = lhs <= rhs;
  c.slack = log_big(rhs) - log_big(lhs);
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  return c;
}

void require_same_group(const FiniteSet& a, const FiniteSet& b) {
  if (a.elements().front().family() != b.elements().front().family()) {
    throw Error(ErrorKind::MixedGroup, "sets live in different groups");
  }
}

}  // namespace

FiniteSet FiniteSet::from(std::vector<GroupValue> elements) {
  if (elements.empty()) throw Error(ErrorKind::InvalidArgument, "empty set");
  if (elements.size() > kMaxSetSize) {
    throw Error(ErrorKind::SupportTooLarge, "set exceeds " + std::to_string(kMaxSetSize) + " elements");
  }
  const auto f = elements.front().family();
  for (const auto& v : elements) {
    if (v.family() != f) throw Error(ErrorKind::MixedGroup, "set mixes " + f.to_string() + " and " + v.family().to_string());
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  FiniteSet s;
  s.elements_ = std::move(elements);
  return s;
}

bool FiniteSet::contains(const GroupValue& v) const {
  return std::binary_search(elements_.begin(), elements_.end(), v);
}

FiniteSet set_combine(const FiniteSet& a, const FiniteSet& b, BinaryOp op) {
  require_same_group(a, b);
  auto table = convolve(a.elements(), ones(a.size()), b.elements(), ones(b.size()), op);
  return FiniteSet::from(std::move(table.values));
}

std::size_t set_combine_size(const FiniteSet& a, const FiniteSet& b, BinaryOp op) {
  require_same_group(a, b);
  return summarize_convolution(a.elements(), ones(a.size()), b.elements(), ones(b.size()), op).support;
}

BigInt set_energy(const FiniteSet& a, const FiniteSet& b) {
  require_same_group(a, b);
  return summarize_convolution(a.elements(), ones(a.size()), b.elements(), ones(b.size()), BinaryOp::Add)
      .sum_of_squares;
}

bool SetCheckReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const SetCheck& c) { return c.holds; });
}

SetCheckReport set_checks(const FiniteSet& a, const FiniteSet& b, const std::optional<FiniteSet>& c_opt) {
  require_same_group(a, b);
  const FiniteSet& c = c_opt ? *c_opt : a;
  require_same_group(a, c);
  const BigInt na = a.size(), nb = b.size();
  const BigInt a_plus_b = set_combine_size(a, b, BinaryOp::Add);
  const BigInt a_minus_b = set_combine_size(a, b, BinaryOp::Sub);
  const BigInt a_minus_c = set_combine_size(a, c, BinaryOp::Sub);
  const BigInt b_minus_c = set_combine_size(b, c, BinaryOp::Sub);
  const BigInt a_plus_a = set_combine_size(a, a, BinaryOp::Add);
  const BigInt a_minus_a = set_combine_size(a, a, BinaryOp::Sub);
  const BigInt energy = set_energy(a, b);

  SetCheckReport r;
  r.checks.push_back(make_check("trivial-sumset", "max(|A|,|B|) <= |A+B|", std::max(na, nb), a_plus_b));
  r.checks.push_back(make_check("energy-lower", "|A|^2 |B|^2 <= E(A,B) |A+B|", na * na * nb * nb, energy * a_plus_b));
  r.checks.push_back(make_check("energy-upper", "E(A,B) <= min(|A|^2|B|, |A||B|^2)", energy,
                                std::min(na * na * nb, na * nb * nb)));
  r.checks.push_back(make_check("ruzsa-triangle", "|A-C| |B| <= |A-B| |B-C|", a_minus_c * nb, a_minus_b * b_minus_c));
  r.checks.push_back(make_check("sum-difference", "|A+B| |A| |B| <= |A-B|^3", a_plus_b * na * nb,
                                a_minus_b * a_minus_b * a_minus_b));
  r.checks.push_back(make_check("doubling-difference-lower", "|A-A| |A| <= |A+A|^2", a_minus_a * na,
                                a_plus_a * a_plus_a));
  r.checks.push_back(make_check("doubling-difference-upper", "|A+A| |A| <= |A-A|^2", a_plus_a * na,
                                a_minus_a * a_minus_a));
  return r;
}

}  // namespace entadd
