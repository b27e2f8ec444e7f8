#include "entadd/evaluate.hpp"

#include "entadd/error.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <functional>
#include <numeric>
#include <optional>

namespace entadd {

namespace {

const double kPi = boost::math::constants::pi<double>();
const double kEuler = boost::math::constants::euler<double>();
const double kLog2 = std::log(2.0);

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double literal_value(const RvExpr& e) { return e.literal.convert_to<double>(); }

// c0 + sum c_v v, when e is affine in its variables.
struct LinearForm {
  double c0 = 0.0;
  std::map<std::string, double> coef;
};

std::optional<double> constant_value(const RvExpr& e) {
  switch (e.kind) {
    case RvExpr::Kind::Var: return std::nullopt;
    case RvExpr::Kind::Literal: return literal_value(e);
    case RvExpr::Kind::Neg: {
      auto v = constant_value(*e.lhs);
      if (!v) return std::nullopt;
      return -*v;
    }
    case RvExpr::Kind::Binary: {
      auto a = constant_value(*e.lhs);
      auto b = constant_value(*e.rhs);
      if (!a || !b) return std::nullopt;
      switch (e.op) {
        case BinaryOp::Add: return *a + *b;
        case BinaryOp::Sub: return *a - *b;
        case BinaryOp::Mul: return *a * *b;
        case BinaryOp::Div: return *a / *b;
      }
    }
  }
  return std::nullopt;
}

std::optional<LinearForm> linear_form(const RvExpr& e) {
  if (auto c = constant_value(e)) return LinearForm{*c, {}};
  switch (e.kind) {
    case RvExpr::Kind::Var: return LinearForm{0.0, {{e.name, 1.0}}};
    case RvExpr::Kind::Literal: return std::nullopt;  // handled above
    case RvExpr::Kind::Neg: {
      auto f = linear_form(*e.lhs);
      if (!f) return std::nullopt;
      f->c0 = -f->c0;
      for (auto& [k, c] : f->coef) c = -c;
      return f;
    }
    case RvExpr::Kind::Binary: {
      if (e.op == BinaryOp::Add || e.op == BinaryOp::Sub) {
        auto a = linear_form(*e.lhs);
        auto b = linear_form(*e.rhs);
        if (!a || !b) return std::nullopt;
        const double s = e.op == BinaryOp::Add ? 1.0 : -1.0;
        a->c0 += s * b->c0;
        for (const auto& [k, c] : b->coef) a->coef[k] += s * c;
        return a;
      }
      std::optional<double> k;
      std::optional<LinearForm> f;
      if (e.op == BinaryOp::Mul) {
        if ((k = constant_value(*e.lhs))) {
          f = linear_form(*e.rhs);
        } else if ((k = constant_value(*e.rhs))) {
          f = linear_form(*e.lhs);
        }
      } else if ((k = constant_value(*e.rhs)) && *k != 0.0) {
        f = linear_form(*e.lhs);
        k = 1.0 / *k;
      }
      if (!f) return std::nullopt;
      f->c0 *= *k;
      for (auto& [n, c] : f->coef) c *= *k;
      return f;
    }
  }
  return std::nullopt;
}

// c * prod v^k_v.
struct Monomial {
  double c = 1.0;
  std::map<std::string, int> power;
};

std::optional<Monomial> monomial(const RvExpr& e) {
  if (auto c = constant_value(e)) return Monomial{*c, {}};
  switch (e.kind) {
    case RvExpr::Kind::Var: return Monomial{1.0, {{e.name, 1}}};
    case RvExpr::Kind::Neg: {
      auto m = monomial(*e.lhs);
      if (m) m->c = -m->c;
      return m;
    }
    case RvExpr::Kind::Binary: {
      if (e.op != BinaryOp::Mul && e.op != BinaryOp::Div) return std::nullopt;
      auto a = monomial(*e.lhs);
      auto b = monomial(*e.rhs);
      if (!a || !b) return std::nullopt;
      const int s = e.op == BinaryOp::Mul ? 1 : -1;
      a->c = s == 1 ? a->c * b->c : a->c / b->c;
      for (const auto& [k, p] : b->power) a->power[k] += s * p;
      return a;
    }
    default: return std::nullopt;
  }
}

void drop_zero(LinearForm& f) {
  for (auto it = f.coef.begin(); it != f.coef.end();) it = it->second == 0.0 ? f.coef.erase(it) : std::next(it);
}

void drop_zero(Monomial& m) {
  for (auto it = m.power.begin(); it != m.power.end();) it = it->second == 0 ? m.power.erase(it) : std::next(it);
}

struct ClosedPair {
  std::optional<double> entropy;
  std::optional<double> log_abs;
};

}  // namespace

McEvaluator::McEvaluator(std::map<std::string, ContinuousModel> models, McConfig cfg)
    : models_(std::move(models)), cfg_(cfg) {}

namespace {

ClosedPair closed_forms(const RvExpr& e, const std::map<std::string, ContinuousModel>& models) {
  ClosedPair out;
  auto model = [&](const std::string& n) -> const ContinuousModel& {
    auto it = models.find(n);
    if (it == models.end()) throw Error(ErrorKind::UnboundVariable, "variable '" + n + "' is not bound");
    return it->second;
  };
  if (auto f = linear_form(e)) {
    drop_zero(*f);
    if (f->coef.empty()) throw Error(ErrorKind::DegenerateSample, "expression is almost surely constant");
    bool all_gauss = true;
    double var = 0.0, mean = f->c0;
    for (const auto& [n, c] : f->coef) {
      const auto& m = model(n);
      if (m.family() != ContinuousModel::Family::Gaussian) {
        all_gauss = false;
        break;
      }
      var += c * c * m.p2() * m.p2();
      mean += c * m.p1();
    }
    if (all_gauss) {
      out.entropy = 0.5 * std::log(2 * kPi * std::exp(1.0) * var);
      if (mean == 0.0) out.log_abs = 0.5 * std::log(var) - 0.5 * (kEuler + kLog2);
      return out;
    }
    if (f->coef.size() == 1) {
      const auto& [n, c] = *f->coef.begin();
      const auto& m = model(n);
      if (m.has_closed_entropy()) out.entropy = closed_form_entropy(m) + std::log(std::fabs(c));
      if (f->c0 == 0.0 && m.has_closed_log_abs_moment()) out.log_abs = e_log_abs(m).value + std::log(std::fabs(c));
      if (out.entropy) return out;
    }
  }
  if (auto mo = monomial(e)) {
    drop_zero(*mo);
    if (mo->c != 0.0 && !mo->power.empty()) {
      bool all_lognormal = true;
      double mu = std::log(std::fabs(mo->c)), s2 = 0.0;
      for (const auto& [n, k] : mo->power) {
        const auto& m = model(n);
        if (m.family() != ContinuousModel::Family::LogNormal) {
          all_lognormal = false;
          break;
        }
        mu += k * m.p1();
        s2 += double(k) * k * m.p2() * m.p2();
      }
      if (all_lognormal) {
        out.entropy = mu + 0.5 * std::log(2 * kPi * std::exp(1.0) * s2);
        out.log_abs = mu;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<double> McEvaluator::sample_expression(const RvExpr& e, const std::string& key) {
  std::set<std::string> ids;
  collect_identifiers(e, ids);
  std::map<std::string, std::vector<double>> draws;
  for (const auto& id : ids) {
    auto it = models_.find(id);
    if (it == models_.end()) throw Error(ErrorKind::UnboundVariable, "variable '" + id + "' is not bound");
    draws[id] = sample_model(it->second, cfg_.n_samples, cfg_.seed, fnv1a(key + "#" + id), cfg_.threads);
  }
  const std::size_t n = cfg_.n_samples;
  std::size_t hazards = 0, divisions = 0;
  double tail = 0.0;
  std::function<double(const RvExpr&, std::size_t)> ev = [&](const RvExpr& x, std::size_t i) -> double {
    switch (x.kind) {
      case RvExpr::Kind::Var: return draws[x.name][i];
      case RvExpr::Kind::Literal: return literal_value(x);
      case RvExpr::Kind::Neg: return -ev(*x.lhs, i);
      case RvExpr::Kind::Binary: {
        const double a = ev(*x.lhs, i);
        const double b = ev(*x.rhs, i);
        switch (x.op) {
          case BinaryOp::Add: return a + b;
          case BinaryOp::Sub: return a - b;
          case BinaryOp::Mul: return a * b;
          case BinaryOp::Div:
            ++divisions;
            if (std::fabs(b) < cfg_.hazard_eps) ++hazards;
            if (b != 0.0) tail += std::fabs(std::log(std::fabs(b)));
            return a / b;
        }
      }
    }
    return 0.0;
  };
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = ev(e, i);
  if (divisions) {
    const double frac = double(hazards) / double(divisions);
    if (frac > cfg_.hazard_threshold) {
      throw Error(ErrorKind::DivisionHazard, "divisor of '" + to_string(e) + "' is near zero in " +
                                                 std::to_string(frac) + " of samples");
    }
    if (tail / double(divisions) > cfg_.tail_threshold) {
      flag_inconclusive("heavy log-tail in the divisor of '" + to_string(e) + "'");
    }
  }
  for (double v : out) {
    if (!std::isfinite(v)) throw Error(ErrorKind::DegenerateSample, "non-finite sample of '" + to_string(e) + "'");
  }
  return out;
}

EstimateWithCI McEvaluator::entropy_estimate(const RvExpr& e) {
  const auto cf = closed_forms(e, models_);
  if (cf.entropy) {
    EstimateWithCI r;
    r.value = *cf.entropy;
    r.closed_form = true;
    return r;
  }
  const std::string key = "h:" + to_string(e);
  auto xs = sample_expression(e, key);
  auto r = mc_entropy_knn(std::move(xs), cfg_.k, cfg_.seed ^ fnv1a(key));
  r.seed = cfg_.seed;
  return r;
}

EstimateWithCI McEvaluator::log_abs_estimate(const RvExpr& e) {
  const auto cf = closed_forms(e, models_);
  if (cf.log_abs) {
    EstimateWithCI r;
    r.value = *cf.log_abs;
    r.closed_form = true;
    return r;
  }
  const std::string key = "elog:" + to_string(e);
  const auto xs = sample_expression(e, key);
  double sum = 0.0, sq = 0.0;
  for (double x : xs) {
    if (x == 0.0) throw Error(ErrorKind::DegenerateSample, "sample at 0 in ElogAbs of '" + to_string(e) + "'");
    const double l = std::log(std::fabs(x));
    sum += l;
    sq += l * l;
  }
  const double n = double(xs.size());
  EstimateWithCI r;
  r.value = sum / n;
  r.std_error = std::sqrt(std::max(0.0, sq / n - r.value * r.value) / n);
  r.n_samples = xs.size();
  r.seed = cfg_.seed;
  return r;
}

Est McEvaluator::primitive_of(const std::string& key, const EstimateWithCI& est) {
  if (!est.closed_form) all_closed_ = false;
  Est v;
  v.value = est.value;
  v.grad[add_primitive(est.std_error)] = 1.0;
  primitive_cache_.emplace(key, v);
  return v;
}

Est McEvaluator::entropy_of(const std::vector<RvExprPtr>& exprs, bool multiplicative) {
  std::map<std::string, RvExprPtr> uniq;
  for (const auto& e : exprs) uniq.emplace(to_string(*e), e);
  // Only sums over independent expressions are supported: h of a tuple of
  // variable-disjoint expressions is the sum of the marginal entropies.
  std::set<std::string> seen;
  for (const auto& [k, e] : uniq) {
    std::set<std::string> ids;
    collect_identifiers(*e, ids);
    for (const auto& id : ids) {
      if (!seen.insert(id).second) {
        throw Error(ErrorKind::NoClosedForm,
                    "joint differential entropy of dependent expressions is not supported ('" + k + "')");
      }
    }
  }
  Est out;
  for (const auto& [k, e] : uniq) {
    const std::string hk = "h:" + k;
    auto it = primitive_cache_.find(hk);
    const Est h = it != primitive_cache_.end() ? it->second : primitive_of(hk, entropy_estimate(*e));
    out.value += h.value;
    for (const auto& [i, g] : h.grad) out.grad[i] += g;
    if (multiplicative) {
      const std::string lk = "elog:" + k;
      auto jt = primitive_cache_.find(lk);
      const Est l = jt != primitive_cache_.end() ? jt->second : primitive_of(lk, log_abs_estimate(*e));
      out.value -= l.value;
      for (const auto& [i, g] : l.grad) out.grad[i] -= g;
    }
  }
  return out;
}

Est McEvaluator::primitive(const Atom& a) {
  auto add = [](Est& acc, const Est& x, double s) {
    acc.value += s * x.value;
    for (const auto& [i, g] : x.grad) acc.grad[i] += s * g;
  };
  auto cat = [](std::vector<RvExprPtr> x, const std::vector<RvExprPtr>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  Est out;
  switch (a.kind) {
    case Atom::Kind::Entropy:
    case Atom::Kind::MultEntropy: {
      const bool mult = a.kind == Atom::Kind::MultEntropy;
      add(out, entropy_of(cat(a.args, a.cond), mult), 1);
      if (!a.cond.empty()) add(out, entropy_of(a.cond, mult), -1);
      return out;
    }
    case Atom::Kind::Mutual:
      add(out, entropy_of(cat(a.args, a.cond), false), 1);
      add(out, entropy_of(cat(a.args2, a.cond), false), 1);
      add(out, entropy_of(cat(cat(a.args, a.args2), a.cond), false), -1);
      if (!a.cond.empty()) add(out, entropy_of(a.cond, false), -1);
      return out;
    case Atom::Kind::ElogAbs: {
      if (a.args.size() != 1) throw Error(ErrorKind::EvaluationFailure, "ElogAbs expects a single expression");
      const std::string lk = "elog:" + to_string(*a.args[0]);
      auto it = primitive_cache_.find(lk);
      return it != primitive_cache_.end() ? it->second : primitive_of(lk, log_abs_estimate(*a.args[0]));
    }
    default:
      throw Error(ErrorKind::DomainMismatch, "functional '" + to_string(a) + "' is only defined for discrete laws");
  }
}

}  // namespace entadd
