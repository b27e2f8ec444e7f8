#include "entadd/functionals.hpp"

#include "entadd/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace entadd {

namespace {

const double kLog2 = std::log(2.0);
constexpr double kTol = 1e-9;

double sum_entropy(const JointDist& j) {
  std::unordered_map<GroupValue, BigInt, GroupValueHash> by_sum;
  for (std::size_t i = 0; i < j.size(); ++i) by_sum[j.tuple(i)[0] + j.tuple(i)[1]] += j.weight(i);
  std::vector<BigInt> w;
  w.reserve(by_sum.size());
  for (auto& kv : by_sum) w.push_back(std::move(kv.second));
  return entropy_of_weights(w, j.total());
}

void require_additive(const FiniteDist& d) {
  if (!d.is_additive()) throw Error(ErrorKind::NonAdditiveVariant, "support is not in an additive group");
}

}  // namespace

double additive_energy(const JointDist& j) {
  if (j.arity() != 2) throw Error(ErrorKind::InvalidArgument, "additive energy needs a joint over (X,Y)");
  const auto copies = cond_indep_copies_given_sum(j);
  const double direct = copies.entropy(copies.coords());
  const double identity = 2.0 * j.entropy(j.coords()) - sum_entropy(j);
  if (std::fabs(direct - identity) > kTol) {
    throw Error(ErrorKind::CrossCheckMismatch, "5-tuple entropy " + std::to_string(direct) +
                                                   " != 2H(X,Y)-H(X+Y) " + std::to_string(identity));
  }
  return direct;
}

double additive_energy_independent(const FiniteDist& x, const FiniteDist& y) {
  return additive_energy(join_independent({{"X", x}, {"Y", y}}));
}

double ruzsa_distance(const FiniteDist& x, const FiniteDist& y) {
  return combine_entropy(x, y, BinaryOp::Sub) - 0.5 * x.entropy() - 0.5 * y.entropy();
}

double mult_ruzsa_distance(const FiniteDist& x, const FiniteDist& y) {
  return combine_entropy(x, y, BinaryOp::Div) - 0.5 * x.entropy() - 0.5 * y.entropy();
}

DoublingSuite doubling_suite(const FiniteDist& d) {
  DoublingSuite s;
  const double h = d.entropy();
  s.sigma = combine_entropy(d, d, BinaryOp::Add) - h;
  s.delta = combine_entropy(d, d, BinaryOp::Sub) - h;
  if (d.family().tag != GroupValue::Family::Tag::Vector) {
    s.sigma_tilde = combine_entropy(d, d, BinaryOp::Mul) - h;
    if (d.all_units()) s.delta_tilde = combine_entropy(d, d, BinaryOp::Div) - h;
  }
  return s;
}

SidonAudit sidon_audit(const FiniteDist& d) {
  require_additive(d);
  SidonAudit a;
  const auto conv = convolve(d.values(), d.weights(), d.values(), d.weights(), BinaryOp::Add);
  auto sum_weight = [&](const GroupValue& s) -> const BigInt& {
    auto it = std::lower_bound(conv.values.begin(), conv.values.end(), s);
    return conv.counts[static_cast<std::size_t>(it - conv.values.begin())];
  };
  // Sidon iff every attained sum comes from one unordered pair.
  std::unordered_map<GroupValue, int, GroupValueHash> pairs_per_sum;
  CompensatedSum er;
  const BigInt t2 = d.total() * d.total();
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t k = i; k < d.size(); ++k) {
      const GroupValue s = d.value(i) + d.value(k);
      ++pairs_per_sum[s];
      const BigInt& w = sum_weight(s);
      const BigInt prod = d.weight(i) * d.weight(k);
      SidonPair p;
      p.a = d.value(i);
      p.b = d.value(k);
      p.r = log_of(w) - log_of(prod) - (i != k ? kLog2 : 0.0);
      p.at_least_log2 = w >= (i != k ? 4 : 2) * prod;
      const double mass = static_cast<double>(Rational(prod * (i != k ? 2 : 1), t2));
      er.add(mass * p.r);
      a.r_table.push_back(std::move(p));
    }
  }
  a.is_support_sidon = std::all_of(pairs_per_sum.begin(), pairs_per_sum.end(),
                                   [](const auto& kv) { return kv.second == 1; });
  a.entropy = d.entropy();
  const double hs = entropy_of_weights(conv.counts, t2);
  a.doubling = hs - a.entropy;
  a.collision = d.collision_probability_exact();
  a.sidon_gap = a.entropy - a.doubling - kLog2 * (1.0 - static_cast<double>(a.collision));
  a.expected_r = er.value();
  const auto [mn, mx] = std::minmax_element(d.weights().begin(), d.weights().end());
  a.p_floor = Rational(*mn, d.total());
  a.p_star = Rational(*mx, d.total());
  return a;
}

bool is_sidon(const std::vector<GroupValue>& set) {
  std::unordered_set<GroupValue, GroupValueHash> sums;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t k = i; k < set.size(); ++k) {
      if (!sums.insert(set[i] + set[k]).second) return false;
    }
  }
  return true;
}

std::vector<SidonViolation> sidon_violations(const std::vector<GroupValue>& set) {
  std::vector<GroupValue> s = set;
  std::sort(s.begin(), s.end());
  std::map<GroupValue, std::vector<std::pair<std::size_t, std::size_t>>> by_sum;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t k = i; k < s.size(); ++k) by_sum[s[i] + s[k]].emplace_back(i, k);
  }
  std::vector<SidonViolation> out;
  for (const auto& [sum, pairs] : by_sum) {
    for (std::size_t x = 0; x < pairs.size(); ++x) {
      for (std::size_t y = x + 1; y < pairs.size(); ++y) {
        out.push_back({s[pairs[x].first], s[pairs[x].second], s[pairs[y].first], s[pairs[y].second]});
      }
    }
  }
  return out;
}

SidonPrune sidon_prune(const FiniteDist& d) {
  const auto audit = sidon_audit(d);
  std::vector<bool> dropped(d.size(), false);
  for (const auto& p : audit.r_table) {
    if (!p.at_least_log2) continue;
    const std::size_t ia = *d.find(p.a);
    const std::size_t ib = *d.find(p.b);
    std::size_t victim = ia;  // equal probabilities: the canonically smaller value
    if (d.weight(ia) != d.weight(ib)) victim = d.weight(ia) < d.weight(ib) ? ia : ib;
    dropped[victim] = true;
  }
  SidonPrune out;
  BigInt kept = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!dropped[i]) {
      out.kept.push_back(d.value(i));
      kept += d.weight(i);
    }
  }
  out.retained_prob = Rational(kept, d.total());
  out.bound = 1.0 - audit.expected_r / (static_cast<double>(audit.p_floor) * kLog2);
  if (!is_sidon(out.kept)) throw Error(ErrorKind::EvaluationFailure, "pruned support is not Sidon");
  return out;
}

MaxSidonSubset max_sidon_subset_prob(const FiniteDist& d) {
  require_additive(d);
  if (d.size() > 40) {
    throw Error(ErrorKind::SupportTooLarge, "support of " + std::to_string(d.size()) + " atoms exceeds 40");
  }
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d.weight(a) > d.weight(b); });
  std::vector<BigInt> suffix(d.size() + 1, BigInt(0));
  for (std::size_t k = d.size(); k-- > 0;) suffix[k] = suffix[k + 1] + d.weight(order[k]);

  BigInt best = 0;
  std::vector<std::size_t> best_set, current;
  std::unordered_set<GroupValue, GroupValueHash> sums;

  std::function<void(std::size_t, const BigInt&)> dfs = [&](std::size_t k, const BigInt& mass) {
    if (mass > best) {
      best = mass;
      best_set = current;
    }
    if (k == d.size() || mass + suffix[k] <= best) return;
    const GroupValue& x = d.value(order[k]);
    std::vector<GroupValue> added;
    bool ok = true;
    for (std::size_t idx : current) {
      GroupValue s = x + d.value(idx);
      if (!sums.insert(s).second) {
        ok = false;
        break;
      }
      added.push_back(std::move(s));
    }
    if (ok) {
      GroupValue s = x + x;
      if (sums.insert(s).second) {
        added.push_back(std::move(s));
      } else {
        ok = false;
      }
    }
    if (ok) {
      current.push_back(order[k]);
      dfs(k + 1, mass + d.weight(order[k]));
      current.pop_back();
    }
    for (const auto& s : added) sums.erase(s);
    dfs(k + 1, mass);
  };
  dfs(0, BigInt(0));

  MaxSidonSubset out;
  out.prob = Rational(best, d.total());
  std::sort(best_set.begin(), best_set.end());
  for (auto i : best_set) out.witness.push_back(d.value(i));
  return out;
}

}  // namespace entadd
