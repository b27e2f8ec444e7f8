#include "entadd/evaluate.hpp"

#include "entadd/error.hpp"
#include "entadd/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entadd {

// ---- shared quantity machinery ------------------------------------------

Est QuantityEvaluator::evaluate(const Quantity& q) {
  Est out;
  for (const auto& t : q.terms) {
    const double c = t.coef.value();
    if (!t.atom) {
      out.value += c;
      continue;
    }
    const Est a = atom_value(*t.atom);
    out.value += c * a.value;
    for (const auto& [k, g] : a.grad) out.grad[k] += c * g;
  }
  return out;
}

void QuantityEvaluator::set_let(const std::string& name, Est value) { lets_[name] = std::move(value); }

double QuantityEvaluator::std_error(const Est& e) const {
  double s = 0.0;
  for (const auto& [k, g] : e.grad) {
    const double t = g * primitive_se_.at(k);
    s += t * t;
  }
  return std::sqrt(s);
}

std::size_t QuantityEvaluator::add_primitive(double std_error) {
  primitive_se_.push_back(std_error);
  return primitive_se_.size() - 1;
}

void QuantityEvaluator::flag_inconclusive(const std::string& note) {
  inconclusive_ = true;
  if (std::find(notes_.begin(), notes_.end(), note) == notes_.end()) notes_.push_back(note);
}

Est QuantityEvaluator::atom_value(const Atom& a) {
  switch (a.kind) {
    case Atom::Kind::LetRef: {
      auto it = lets_.find(a.name);
      if (it == lets_.end()) throw Error(ErrorKind::UnboundVariable, "unknown name '" + a.name + "'");
      return it->second;
    }
    case Atom::Kind::Max:
    case Atom::Kind::Min: {
      Est best;
      bool first = true;
      for (const auto& op : a.operands) {
        Est v = evaluate(*op);
        if (first || (a.kind == Atom::Kind::Max ? v.value > best.value : v.value < best.value)) best = std::move(v);
        first = false;
      }
      return best;
    }
    case Atom::Kind::Abs: {
      Est v = evaluate(*a.operands.at(0));
      if (v.value < 0) {
        v.value = -v.value;
        for (auto& [k, g] : v.grad) g = -g;
      }
      return v;
    }
    case Atom::Kind::Ratio: {
      const Est num = evaluate(*a.operands.at(0));
      const Est den = evaluate(*a.operands.at(1));
      if (den.value == 0.0) throw Error(ErrorKind::EvaluationFailure, "ratio with zero denominator");
      Est r;
      r.value = num.value / den.value;
      for (const auto& [k, g] : num.grad) r.grad[k] += g / den.value;
      for (const auto& [k, g] : den.grad) r.grad[k] -= num.value * g / (den.value * den.value);
      return r;
    }
    default: break;
  }
  const std::string key = to_string(a);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  Est v = primitive(a);
  cache_.emplace(key, v);
  return v;
}

// ---- exact back end -------------------------------------------------------

namespace {

JointDist single_factor(const std::string& name, const FiniteDist& d) {
  std::vector<std::pair<JointDist::Tuple, BigInt>> atoms;
  atoms.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) atoms.push_back({{d.value(i)}, d.weight(i)});
  return JointDist::from_weights({name}, std::move(atoms));
}

bool disjoint(const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
  for (auto x : a)
    if (b.count(x)) return false;
  return true;
}

std::vector<RvExprPtr> concat(const std::vector<RvExprPtr>& a, const std::vector<RvExprPtr>& b) {
  std::vector<RvExprPtr> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

const char* const kHole = "\x01";

}  // namespace

ExactEvaluator::ExactEvaluator(std::vector<JointDist> factors, std::size_t cap) : factors_(std::move(factors)), cap_(cap) {
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    for (const auto& c : factors_[f].coords()) {
      if (!owner_.emplace(c, f).second) throw Error(ErrorKind::DuplicateName, "variable '" + c + "' bound twice");
    }
  }
}

ExactEvaluator ExactEvaluator::independent(const std::vector<std::pair<std::string, FiniteDist>>& bindings,
                                           std::size_t cap) {
  std::vector<JointDist> fs;
  fs.reserve(bindings.size());
  for (const auto& [n, d] : bindings) fs.push_back(single_factor(n, d));
  return ExactEvaluator(std::move(fs), cap);
}

std::set<std::size_t> ExactEvaluator::factors_of(const RvExpr& e) const {
  std::set<std::string> ids;
  collect_identifiers(e, ids);
  std::set<std::size_t> out;
  for (const auto& id : ids) {
    auto it = owner_.find(id);
    if (it == owner_.end()) throw Error(ErrorKind::UnboundVariable, "variable '" + id + "' is not bound");
    out.insert(it->second);
  }
  return out;
}

JointDist ExactEvaluator::enumerate(const std::set<std::size_t>& factors) const {
  auto it = factors.begin();
  JointDist j = factors_.at(*it);
  for (++it; it != factors.end(); ++it) j = product(j, factors_[*it], cap_);
  return j;
}

const FiniteDist& ExactEvaluator::dist_of(const RvExpr& e) {
  const std::string key = to_string(e);
  if (auto it = dist_cache_.find(key); it != dist_cache_.end()) return it->second;

  auto compute = [&]() -> FiniteDist {
    const auto fs = factors_of(e);
    if (fs.empty()) {
      return FiniteDist::point_mass(
          entadd::evaluate(e, [](const std::string&) -> GroupValue { throw Error(ErrorKind::EvaluationFailure, "?"); }));
    }
    switch (e.kind) {
      case RvExpr::Kind::Var: {
        const auto& j = factors_[*fs.begin()];
        return j.marginal_dist(e.name);
      }
      case RvExpr::Kind::Neg: {
        const FiniteDist& d = dist_of(*e.lhs);
        std::vector<std::pair<GroupValue, BigInt>> atoms;
        atoms.reserve(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) atoms.push_back({negate(d.value(i)), d.weight(i)});
        return FiniteDist::from_weights(std::move(atoms));
      }
      case RvExpr::Kind::Binary: {
        const auto fl = factors_of(*e.lhs);
        const auto fr = factors_of(*e.rhs);
        if (!fl.empty() && !fr.empty() && disjoint(fl, fr)) {
          return combine_independent(dist_of(*e.lhs), dist_of(*e.rhs), e.op, cap_);
        }
        if (fl.empty() || fr.empty()) {
          // One side is a constant: map the other side atom by atom, keeping
          // literal coercion by evaluating op(hole, const).
          const bool left_var = !fl.empty();
          const FiniteDist& d = dist_of(left_var ? *e.lhs : *e.rhs);
          const RvExprPtr hole = make_var(kHole);
          const RvExprPtr node = left_var ? make_binary(e.op, hole, e.rhs) : make_binary(e.op, e.lhs, hole);
          std::vector<std::pair<GroupValue, BigInt>> atoms;
          atoms.reserve(d.size());
          for (std::size_t i = 0; i < d.size(); ++i) {
            const GroupValue& v = d.value(i);
            atoms.push_back({entadd::evaluate(*node, [&](const std::string&) { return v; }), d.weight(i)});
          }
          return FiniteDist::from_weights(std::move(atoms));
        }
        break;
      }
      case RvExpr::Kind::Literal: break;
    }
    // Operands share a factor: enumerate the joint law of the factors.
    const JointDist j = enumerate(fs);
    RvExprPtr self = std::make_shared<RvExpr>(e);
    return pushforward(j, {{"v", self}}, cap_).marginal_dist("v");
  };
  FiniteDist d = compute();
  return dist_cache_.emplace(key, std::move(d)).first->second;
}

double ExactEvaluator::entropy_of(const std::vector<RvExprPtr>& exprs) {
  // Dedupe by printed form; constants carry no entropy.
  std::map<std::string, RvExprPtr> uniq;
  for (const auto& e : exprs) {
    if (!factors_of(*e).empty()) uniq.emplace(to_string(*e), e);
  }
  if (uniq.empty()) return 0.0;
  std::string key;
  for (const auto& [k, e] : uniq) key += k + "\x1f";
  if (auto it = entropy_cache_.find(key); it != entropy_cache_.end()) return it->second;

  // Components of expressions linked through shared factors are
  // independent of each other, so their entropies add.
  std::vector<RvExprPtr> list;
  std::vector<std::set<std::size_t>> fsets;
  for (const auto& [k, e] : uniq) {
    list.push_back(e);
    fsets.push_back(factors_of(*e));
  }
  const std::size_t n = list.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!disjoint(fsets[a], fsets[b])) parent[find(a)] = find(b);

  std::map<std::size_t, std::vector<std::size_t>> comps;
  for (std::size_t i = 0; i < n; ++i) comps[find(i)].push_back(i);

  double total = 0.0;
  for (const auto& [root, members] : comps) {
    if (members.size() == 1) {
      total += dist_of(*list[members[0]]).entropy();
      continue;
    }
    std::set<std::size_t> fs;
    bool plain = true;
    std::vector<std::string> names;
    for (auto m : members) {
      fs.insert(fsets[m].begin(), fsets[m].end());
      if (list[m]->kind != RvExpr::Kind::Var) plain = false;
      names.push_back(list[m]->name);
    }
    if (plain && fs.size() == 1) {
      total += factors_[*fs.begin()].entropy(names);
      continue;
    }
    const JointDist j = enumerate(fs);
    std::vector<std::pair<std::string, RvExprPtr>> named;
    std::vector<std::string> out_names;
    for (std::size_t i = 0; i < members.size(); ++i) {
      out_names.push_back("e" + std::to_string(i));
      named.push_back({out_names.back(), list[members[i]]});
    }
    total += pushforward(j, named, cap_).entropy(out_names);
  }
  entropy_cache_.emplace(key, total);
  return total;
}

Est ExactEvaluator::primitive(const Atom& a) {
  Est out;
  auto single = [&]() -> const FiniteDist& {
    if (a.args.size() != 1) throw Error(ErrorKind::EvaluationFailure, "functional expects a single expression");
    return dist_of(*a.args[0]);
  };
  switch (a.kind) {
    case Atom::Kind::Entropy:
    case Atom::Kind::MultEntropy:
      // Discrete multiplicative entropy coincides with Shannon entropy.
      out.value = entropy_of(concat(a.args, a.cond)) - entropy_of(a.cond);
      break;
    case Atom::Kind::Mutual:
      out.value = entropy_of(concat(a.args, a.cond)) + entropy_of(concat(a.args2, a.cond)) -
                  entropy_of(concat(concat(a.args, a.args2), a.cond)) - entropy_of(a.cond);
      break;
    case Atom::Kind::ElogAbs: {
      const FiniteDist& d = single();
      CompensatedSum s;
      for (std::size_t i = 0; i < d.size(); ++i) {
        const GroupValue& v = d.value(i);
        if (!v.is_numeric()) throw Error(ErrorKind::DomainMismatch, "ElogAbs needs numeric values");
        if (v.is_zero()) throw Error(ErrorKind::EvaluationFailure, "ElogAbs of a variable with an atom at 0");
        s.add(d.prob_double(i) * v.log_abs());
      }
      out.value = s.value();
      break;
    }
    case Atom::Kind::Coll: out.value = single().collision_probability(); break;
    case Atom::Kind::Pmin:
    case Atom::Kind::Pmax: {
      const FiniteDist& d = single();
      const auto& w = d.weights();
      const BigInt& m = a.kind == Atom::Kind::Pmin ? *std::min_element(w.begin(), w.end())
                                                    : *std::max_element(w.begin(), w.end());
      out.value = static_cast<double>(Rational(m, d.total()));
      break;
    }
    case Atom::Kind::SidonRetained:
      out.value = static_cast<double>(sidon_prune(single()).retained_prob);
      break;
    default: throw Error(ErrorKind::EvaluationFailure, "not a primitive functional");
  }
  return out;
}

}  // namespace entadd
