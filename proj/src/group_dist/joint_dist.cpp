#include "entadd/joint_dist.hpp"

#include "entadd/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace entadd {

namespace mp = boost::multiprecision;

namespace {

struct TupleHash {
  std::size_t operator()(const JointDist::Tuple& t) const noexcept {
    std::size_t h = 0x84222325cbf29ce4ULL;
    for (const auto& v : t) h = (h ^ v.hash()) * 0x100000001b3ULL;
    return h;
  }
};

void check_unique(const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) throw Error(ErrorKind::DuplicateName, "duplicate coordinate '" + n + "'");
  }
}

void check_disjoint(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  for (const auto& x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) {
      throw Error(ErrorKind::OverlappingCoordinateSets, "coordinate '" + x + "' appears on both sides");
    }
  }
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

JointDist JointDist::from_weights(std::vector<std::string> coords, std::vector<std::pair<Tuple, BigInt>> atoms) {
  check_unique(coords);
  if (coords.empty()) throw Error(ErrorKind::InvalidArgument, "joint needs at least one coordinate");
  const std::size_t k = coords.size();
  std::unordered_map<Tuple, BigInt, TupleHash> merged;
  merged.reserve(atoms.size());
  for (auto& [t, w] : atoms) {
    if (t.size() != k) throw Error(ErrorKind::InvalidDistribution, "tuple arity does not match coordinates");
    if (w < 0) throw Error(ErrorKind::InvalidDistribution, "negative weight");
    if (w == 0) continue;
    merged[std::move(t)] += w;
  }
  if (merged.empty()) throw Error(ErrorKind::InvalidDistribution, "empty support");
  std::vector<std::pair<Tuple, BigInt>> items(std::make_move_iterator(merged.begin()),
                                               std::make_move_iterator(merged.end()));
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t c = 0; c < k; ++c) {
    const auto f = items.front().first[c].family();
    for (const auto& it : items) {
      if (it.first[c].family() != f) throw Error(ErrorKind::MixedGroup, "coordinate '" + coords[c] + "' mixes groups");
    }
  }
  BigInt g = 0;
  for (const auto& it : items) {
    g = mp::gcd(g, it.second);
    if (g == 1) break;
  }
  JointDist j;
  j.coords_ = std::move(coords);
  j.data_.reserve(items.size() * k);
  j.weights_.reserve(items.size());
  j.total_ = 0;
  for (auto& it : items) {
    for (auto& v : it.first) j.data_.push_back(std::move(v));
    if (g != 1) it.second /= g;
    j.total_ += it.second;
    j.weights_.push_back(std::move(it.second));
  }
  return j;
}

JointDist JointDist::from_probabilities(std::vector<std::string> coords,
                                        const std::vector<std::pair<Tuple, Rational>>& atoms) {
  Rational sum = 0;
  BigInt lcm = 1;
  for (const auto& [t, p] : atoms) {
    if (p < 0) throw Error(ErrorKind::InvalidDistribution, "negative probability");
    sum += p;
    lcm = mp::lcm(lcm, mp::denominator(p));
  }
  if (sum != 1) {
    throw Error(ErrorKind::InvalidDistribution,
                "probabilities sum to " + sum.str() + " (residual " + Rational(1 - sum).str() + ")");
  }
  std::vector<std::pair<Tuple, BigInt>> w;
  for (const auto& [t, p] : atoms) w.emplace_back(t, mp::numerator(p) * (lcm / mp::denominator(p)));
  return from_weights(std::move(coords), std::move(w));
}

bool JointDist::has(const std::string& name) const {
  return std::find(coords_.begin(), coords_.end(), name) != coords_.end();
}

std::size_t JointDist::index_of(const std::string& name) const {
  auto it = std::find(coords_.begin(), coords_.end(), name);
  if (it == coords_.end()) throw Error(ErrorKind::UnknownCoordinate, "unknown coordinate '" + name + "'");
  return static_cast<std::size_t>(it - coords_.begin());
}

std::vector<BigInt> JointDist::grouped_weights(const std::vector<std::size_t>& idx) const {
  if (idx.empty()) return {total_};
  if (idx.size() == 1) {
    std::unordered_map<GroupValue, BigInt, GroupValueHash> m;
    for (std::size_t i = 0; i < size(); ++i) m[tuple(i)[idx[0]]] += weights_[i];
    std::vector<BigInt> out;
    out.reserve(m.size());
    for (auto& kv : m) out.push_back(std::move(kv.second));
    return out;
  }
  std::unordered_map<Tuple, BigInt, TupleHash> m;
  Tuple key(idx.size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t c = 0; c < idx.size(); ++c) key[c] = tuple(i)[idx[c]];
    m[key] += weights_[i];
  }
  std::vector<BigInt> out;
  out.reserve(m.size());
  for (auto& kv : m) out.push_back(std::move(kv.second));
  return out;
}

JointDist JointDist::marginal(const std::vector<std::string>& names) const {
  check_unique(names);
  std::vector<std::size_t> idx;
  for (const auto& n : names) idx.push_back(index_of(n));
  std::vector<std::pair<Tuple, BigInt>> atoms;
  atoms.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    Tuple t(idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c) t[c] = tuple(i)[idx[c]];
    atoms.emplace_back(std::move(t), weights_[i]);
  }
  return from_weights(names, std::move(atoms));
}

FiniteDist JointDist::marginal_dist(const std::string& name) const {
  const std::size_t c = index_of(name);
  std::vector<std::pair<GroupValue, BigInt>> atoms;
  atoms.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) atoms.emplace_back(tuple(i)[c], weights_[i]);
  return FiniteDist::from_weights(std::move(atoms));
}

double JointDist::entropy(const std::vector<std::string>& names) const {
  std::vector<std::size_t> idx;
  for (const auto& n : names) idx.push_back(index_of(n));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (idx.empty()) return 0.0;
  if (idx.size() == arity()) return entropy_of_weights(weights_, total_);
  return entropy_of_weights(grouped_weights(idx), total_);
}

JointDist join_independent(const std::vector<std::pair<std::string, FiniteDist>>& bindings, std::size_t cap) {
  if (bindings.empty()) throw Error(ErrorKind::InvalidArgument, "no bindings");
  std::vector<std::string> names;
  for (const auto& b : bindings) names.push_back(b.first);
  check_unique(names);
  std::vector<std::pair<JointDist::Tuple, BigInt>> atoms;
  atoms.emplace_back(JointDist::Tuple{}, BigInt(1));
  for (const auto& [name, d] : bindings) {
    if (atoms.size() * d.size() > cap) {
      throw Error(ErrorKind::SupportOverflow, "joint support exceeds the cap of " + std::to_string(cap) + " atoms");
    }
    std::vector<std::pair<JointDist::Tuple, BigInt>> next;
    next.reserve(atoms.size() * d.size());
    for (const auto& [t, w] : atoms) {
      for (std::size_t i = 0; i < d.size(); ++i) {
        auto t2 = t;
        t2.push_back(d.value(i));
        next.emplace_back(std::move(t2), w * d.weight(i));
      }
    }
    atoms.swap(next);
  }
  return JointDist::from_weights(names, std::move(atoms));
}

JointDist product(const JointDist& a, const JointDist& b, std::size_t cap) {
  check_disjoint(a.coords(), b.coords());
  if (a.size() * b.size() > cap) {
    throw Error(ErrorKind::SupportOverflow, "joint support exceeds the cap of " + std::to_string(cap) + " atoms");
  }
  std::vector<std::pair<JointDist::Tuple, BigInt>> atoms;
  atoms.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      JointDist::Tuple t(a.tuple(i), a.tuple(i) + a.arity());
      t.insert(t.end(), b.tuple(j), b.tuple(j) + b.arity());
      atoms.emplace_back(std::move(t), a.weight(i) * b.weight(j));
    }
  }
  return JointDist::from_weights(concat(a.coords(), b.coords()), std::move(atoms));
}

JointDist pushforward(const JointDist& j, const std::vector<std::pair<std::string, RvExprPtr>>& exprs,
                      std::size_t cap) {
  std::unordered_map<std::string, std::size_t> slots;
  for (std::size_t c = 0; c < j.arity(); ++c) slots[j.coords()[c]] = c;
  std::vector<CompiledRv> programs;
  std::vector<std::string> names;
  for (const auto& [name, e] : exprs) {
    programs.emplace_back(*e, slots);
    names.push_back(name);
  }
  std::vector<std::pair<JointDist::Tuple, BigInt>> atoms;
  atoms.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    JointDist::Tuple t;
    t.reserve(programs.size());
    for (const auto& p : programs) t.push_back(p(j.tuple(i)));
    atoms.emplace_back(std::move(t), j.weight(i));
  }
  auto out = JointDist::from_weights(names, std::move(atoms));
  if (out.size() > cap) throw Error(ErrorKind::SupportOverflow, "pushforward support exceeds the cap");
  return out;
}

double joint_entropy(const JointDist& j, const std::vector<std::string>& names) { return j.entropy(names); }

double conditional_entropy(const JointDist& j, const std::vector<std::string>& a, const std::vector<std::string>& b) {
  check_disjoint(a, b);
  return j.entropy(concat(a, b)) - j.entropy(b);
}

double mutual_information(const JointDist& j, const std::vector<std::string>& a, const std::vector<std::string>& b) {
  check_disjoint(a, b);
  return j.entropy(a) + j.entropy(b) - j.entropy(concat(a, b));
}

double conditional_mutual_information(const JointDist& j, const std::vector<std::string>& a,
                                      const std::vector<std::string>& b, const std::vector<std::string>& c) {
  check_disjoint(a, b);
  check_disjoint(a, c);
  check_disjoint(b, c);
  return j.entropy(concat(a, c)) + j.entropy(concat(b, c)) - j.entropy(concat(concat(a, b), c)) - j.entropy(c);
}

JointDist cond_indep_copies_given_sum(const JointDist& j) {
  if (j.arity() != 2) throw Error(ErrorKind::InvalidArgument, "expected a joint over exactly two coordinates");
  for (std::size_t i = 0; i < j.size(); ++i) {
    for (std::size_t c = 0; c < 2; ++c) {
      if (j.tuple(i)[c].kind() == GroupValue::Kind::Rat) {
        throw Error(ErrorKind::NonAdditiveVariant, "coordinates must live in an additive group");
      }
    }
  }
  if (j.tuple(0)[0].family() != j.tuple(0)[1].family()) {
    throw Error(ErrorKind::NonAdditiveVariant, "X and Y live in different groups");
  }
  std::map<GroupValue, std::vector<std::size_t>> by_sum;
  for (std::size_t i = 0; i < j.size(); ++i) by_sum[j.tuple(i)[0] + j.tuple(i)[1]].push_back(i);
  BigInt lcm = 1;
  std::vector<BigInt> group_weight;
  for (const auto& [s, members] : by_sum) {
    BigInt w = 0;
    for (auto i : members) w += j.weight(i);
    lcm = mp::lcm(lcm, w);
    group_weight.push_back(std::move(w));
  }
  std::vector<std::pair<JointDist::Tuple, BigInt>> atoms;
  std::size_t g = 0;
  for (const auto& [s, members] : by_sum) {
    const BigInt scale = lcm / group_weight[g++];
    for (auto a : members) {
      for (auto b : members) {
        atoms.push_back({{j.tuple(a)[0], j.tuple(a)[1], j.tuple(b)[0], j.tuple(b)[1], s},
                         j.weight(a) * j.weight(b) * scale});
      }
    }
  }
  return JointDist::from_weights({"X1", "Y1", "X2", "Y2", "S"}, std::move(atoms));
}

}  // namespace entadd
