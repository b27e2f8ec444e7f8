#include "entadd/search.hpp"

#include "entadd/continuous.hpp"
#include "entadd/dist_io.hpp"
#include "entadd/error.hpp"
#include "entadd/evaluate.hpp"
#include "entadd/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <set>

namespace entadd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::string> objective_ids(const Objective& obj) {
  std::set<std::string> ids;
  collect_identifiers(*obj.quantity, ids);
  std::set<std::string> lets;
  collect_let_refs(*obj.quantity, lets);
  if (!lets.empty()) throw Error(ErrorKind::UnboundVariable, "objective refers to let '" + *lets.begin() + "'");
  if (ids.empty()) throw Error(ErrorKind::InvalidArgument, "objective has no random variables");
  return {ids.begin(), ids.end()};
}

std::vector<double> softmax(const std::vector<double>& theta) {
  const double m = *std::max_element(theta.begin(), theta.end());
  std::vector<double> p(theta.size());
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] = std::exp(theta[i] - m);
  for (auto& x : p) x /= s;
  return p;
}

// One restart's state and bookkeeping. Scores are minimised: score =
// +value (minimise) or -value (maximise); +inf marks a guarded iterate.
struct Run {
  const Objective& obj;
  const SearchConfig& cfg;
  const std::vector<std::string>& ids;
  std::size_t evaluations = 0;
  std::size_t rejections = 0;

  double score(const FiniteDist& d) {
    ++evaluations;
    if (cfg.h_floor > 0.0 && d.entropy() < cfg.h_floor) {
      ++rejections;
      return kInf;
    }
    std::vector<std::pair<std::string, FiniteDist>> b;
    for (const auto& id : ids) b.push_back({id, d});
    ExactEvaluator ev = ExactEvaluator::independent(b);
    const double v = ev.evaluate(*obj.quantity).value;
    if (!std::isfinite(v)) return kInf;
    return obj.maximize ? -v : v;
  }
  double score(const std::vector<double>& p) { return score(rationalize(obj.support, p, cfg.denominator_cap)); }
};

struct RestartResult {
  std::vector<double> best;
  double best_score = kInf;
  std::vector<TracePoint> trace;
  std::size_t evaluations = 0;
  std::size_t rejections = 0;
};

RestartResult run_restart(const Objective& obj, const SearchConfig& cfg, const std::vector<std::string>& ids,
                          const std::vector<double>& p0, unsigned restart) {
  auto rng = stream_rng(cfg.seed, 0x5ea7c4u, restart);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Run run{obj, cfg, ids};
  const std::size_t n = p0.size();

  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) theta[i] = std::log(std::max(p0[i], 1e-300));
  double cur = kInf;
  if (restart > 0) {
    // perturbed start; fall back to the initial point when it is guarded
    auto t = theta;
    for (auto& x : t) x += cfg.t0 * gauss(rng);
    cur = run.score(softmax(t));
    if (std::isfinite(cur)) theta = t;
  }
  if (!std::isfinite(cur)) cur = run.score(softmax(theta));

  RestartResult res;
  res.best = softmax(theta);
  res.best_score = cur;
  std::size_t it = 0;
  auto push_trace = [&] {
    const double v = obj.maximize ? -res.best_score : res.best_score;
    res.trace.push_back({it, v});
  };
  push_trace();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  double eta = cfg.eta;
  const double h = cfg.fd_step;
  for (unsigned epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double temp = cfg.t0 * std::pow(cfg.cooling, static_cast<double>(epoch));
    for (unsigned s = 0; s < cfg.steps; ++s) {
      ++it;
      const std::vector<double> p = softmax(theta);
      // coordinates differentiated this step
      std::size_t k = n;
      if (n > cfg.fd_block) {
        k = cfg.fd_block;
        for (std::size_t i = 0; i < k; ++i) {
          std::uniform_int_distribution<std::size_t> pick(i, n - 1);
          std::swap(order[i], order[pick(rng)]);
        }
      }
      std::vector<double> grad(n, 0.0);
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t i = n > cfg.fd_block ? order[j] : j;
        auto up = p;
        up[i] += h;
        for (auto& x : up) x /= 1.0 + h;
        auto dn = p;
        const double step = std::min(h, p[i] / 2);
        dn[i] -= step;
        for (auto& x : dn) x /= 1.0 - step;
        const double fu = run.score(up), fd = run.score(dn);
        if (std::isfinite(fu) && std::isfinite(fd)) grad[i] = (fu - fd) / (h + step);
      }
      // exponentiated-gradient step, accepted only on improvement
      auto cand = theta;
      for (std::size_t i = 0; i < n; ++i) cand[i] -= eta * grad[i];
      const double cv = run.score(softmax(cand));
      if (cv < cur) {
        theta = std::move(cand);
        cur = cv;
        eta = std::min(eta * 1.5, 64.0 * cfg.eta);
      } else {
        eta *= 0.5;
      }
      if (cur < res.best_score) {
        res.best_score = cur;
        res.best = softmax(theta);
      }
      push_trace();
    }
    // annealing move on the logits; the best point is kept separately
    if (temp > 0.0) {
      auto cand = theta;
      for (auto& x : cand) x += temp * gauss(rng);
      const double cv = run.score(softmax(cand));
      if (std::isfinite(cv) && (cv < cur || unif(rng) < std::exp(-(cv - cur) / temp))) {
        theta = std::move(cand);
        cur = cv;
        eta = cfg.eta;
      }
      if (cur < res.best_score) {
        res.best_score = cur;
        res.best = softmax(theta);
      }
    }
  }
  res.evaluations = run.evaluations;
  res.rejections = run.rejections;
  return res;
}

}  // namespace

double evaluate_objective(const Objective& obj, const FiniteDist& d) {
  const auto ids = objective_ids(obj);
  std::vector<std::pair<std::string, FiniteDist>> b;
  for (const auto& id : ids) b.push_back({id, d});
  ExactEvaluator ev = ExactEvaluator::independent(b);
  return ev.evaluate(*obj.quantity).value;
}

FiniteDist rationalize(const std::vector<GroupValue>& support, const std::vector<double>& probs, std::int64_t cap) {
  if (support.size() != probs.size()) throw Error(ErrorKind::InvalidArgument, "support/probability size mismatch");
  std::vector<std::pair<GroupValue, BigInt>> atoms;
  atoms.reserve(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double w = std::round(std::max(0.0, probs[i]) * static_cast<double>(cap));
    atoms.push_back({support[i], BigInt(std::max<std::int64_t>(1, static_cast<std::int64_t>(w)))});
  }
  return FiniteDist::from_weights(std::move(atoms));
}

SearchResult optimize_over_simplex(const Objective& obj, const SearchConfig& cfg) {
  if (obj.support.empty()) throw Error(ErrorKind::InvalidArgument, "empty search support");
  if (obj.support.size() > cfg.support_cap)
    throw Error(ErrorKind::SupportTooLarge, "search support of " + std::to_string(obj.support.size()) +
                                                " exceeds the cap of " + std::to_string(cfg.support_cap));
  if (cfg.restarts == 0) throw Error(ErrorKind::InvalidArgument, "at least one restart is needed");
  if (!(cfg.fd_step > 0.0) || cfg.denominator_cap < 1 || cfg.fd_block == 0)
    throw Error(ErrorKind::InvalidArgument, "invalid search step configuration");
  {
    std::set<GroupValue> seen(obj.support.begin(), obj.support.end());
    if (seen.size() != obj.support.size()) throw Error(ErrorKind::InvalidArgument, "duplicate support values");
  }
  const auto ids = objective_ids(obj);

  std::vector<double> p0(obj.support.size(), 1.0 / static_cast<double>(obj.support.size()));
  if (cfg.initial) {
    for (std::size_t i = 0; i < cfg.initial->size(); ++i) {
      auto pos = std::find(obj.support.begin(), obj.support.end(), cfg.initial->value(i));
      if (pos == obj.support.end())
        throw Error(ErrorKind::InvalidArgument, "initial law has atom " + cfg.initial->value(i).to_string() +
                                                    " outside the search support");
    }
    for (std::size_t i = 0; i < obj.support.size(); ++i) {
      p0[i] = static_cast<double>(cfg.initial->prob_of(obj.support[i]));
    }
  }

  SearchResult out;
  out.config = cfg;
  const FiniteDist start = cfg.initial ? *cfg.initial : rationalize(obj.support, p0, cfg.denominator_cap);
  try {
    out.initial_value = evaluate_objective(obj, start);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnboundVariable || e.kind() == ErrorKind::InvalidArgument) throw;
    throw Error(ErrorKind::EvaluationFailure, std::string("objective not evaluable at the initial point: ") + e.what());
  }
  out.guard_at_initial = cfg.h_floor > 0.0 && start.entropy() < cfg.h_floor;
  if (!std::isfinite(out.initial_value))
    throw Error(ErrorKind::EvaluationFailure, "objective is not finite at the initial point");

  std::vector<RestartResult> runs(cfg.restarts);
  parallel_for(cfg.restarts, cfg.threads, [&](std::size_t r) {
    runs[r] = run_restart(obj, cfg, ids, p0, static_cast<unsigned>(r));
  });

  // reduce in restart order; ties go to the lower index
  std::size_t best = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    out.evaluations += runs[r].evaluations;
    out.guard_rejections += runs[r].rejections;
    if (runs[r].best_score < runs[best].best_score) best = r;
  }
  out.best_restart = static_cast<unsigned>(best);
  out.trace = runs[best].trace;
  if (!std::isfinite(runs[best].best_score)) {
    // every iterate was guarded: report the initial point
    out.best = start;
    out.value = out.initial_value;
    return out;
  }
  out.best = rationalize(obj.support, runs[best].best, cfg.denominator_cap);
  // final exact re-check of the reported point
  out.value = evaluate_objective(obj, out.best);
  const double recorded = obj.maximize ? -runs[best].best_score : runs[best].best_score;
  if (std::abs(out.value - recorded) > 1e-12 * std::max(1.0, std::abs(recorded)))
    throw Error(ErrorKind::EvaluationFailure, "search value not reproduced by exact re-evaluation");
  return out;
}

std::string search_result_json(const SearchResult& r, const Objective& obj) {
  nlohmann::ordered_json j;
  j["objective"] = obj.text;
  j["direction"] = obj.maximize ? "max" : "min";
  j["support_size"] = obj.support.size();
  j["value"] = r.value;
  j["initial_value"] = r.initial_value;
  j["improvement"] = obj.maximize ? r.value - r.initial_value : r.initial_value - r.value;
  j["best"] = format_distribution(r.best);
  j["best_restart"] = r.best_restart;
  j["evaluations"] = r.evaluations;
  j["guard"] = {{"h_floor", r.config.h_floor},
                {"rejections", r.guard_rejections},
                {"triggered", r.guard_rejections > 0 || r.guard_at_initial},
                {"at_initial", r.guard_at_initial}};
  const auto& c = r.config;
  j["config"] = {{"seed", c.seed},       {"restarts", c.restarts},   {"epochs", c.epochs},
                 {"steps", c.steps},     {"eta", c.eta},             {"fd_step", c.fd_step},
                 {"fd_block", c.fd_block}, {"denominator_cap", c.denominator_cap},
                 {"t0", c.t0},           {"cooling", c.cooling},     {"threads", c.threads}};
  j["trace_points"] = r.trace.size();
  return j.dump(2) + "\n";
}

std::string trace_csv(const SearchResult& r) {
  std::string out = "iteration,value\n";
  char buf[64];
  for (const auto& t : r.trace) {
    std::snprintf(buf, sizeof buf, "%zu,%.12g\n", t.iteration, t.value);
    out += buf;
  }
  return out;
}

}  // namespace entadd
