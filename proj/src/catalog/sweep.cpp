#include "entadd/catalog.hpp"

#include "entadd/dist_io.hpp"
#include "entadd/error.hpp"
#include "entadd/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace entadd {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Value pool for one trial: integers in a range (optionally without 0 or
// negatives) or all residues of Z_m.
std::vector<GroupValue> value_pool(const InequalityRecord& r, const SweepConfig& cfg, std::mt19937_64& rng) {
  const bool integers = r.integers_only || r.support != SupportRule::Any || cfg.moduli.empty();
  std::vector<GroupValue> pool;
  const std::size_t families = integers ? 1 : 1 + cfg.moduli.size();
  const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, families - 1)(rng);
  if (pick == 0) {
    const std::int64_t lo = r.support == SupportRule::Positive ? 1 : -cfg.range;
    for (std::int64_t v = lo; v <= cfg.range; ++v) {
      if (v == 0 && r.support != SupportRule::Any) continue;
      pool.push_back(GroupValue::integer(v));
    }
  } else {
    const std::int64_t m = cfg.moduli[pick - 1];
    for (std::int64_t v = 0; v < m; ++v) pool.push_back(GroupValue::residue(v, m));
  }
  return pool;
}

std::vector<BigInt> random_weights(std::size_t k, const SweepConfig& cfg, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> w(1, std::max<std::size_t>(1, cfg.weight_granularity));
  std::vector<BigInt> out(k);
  for (auto& x : out) x = w(rng);
  return out;
}

std::size_t support_size(std::size_t cap, std::size_t pool, std::mt19937_64& rng) {
  const std::size_t hi = std::max<std::size_t>(1, std::min(cap, pool));
  return std::uniform_int_distribution<std::size_t>(1, hi)(rng);
}

}  // namespace

DiscreteBindings random_bindings(const InequalityRecord& r, const SweepConfig& cfg, std::size_t trial) {
  if (r.domain == Domain::Continuous)
    throw Error(ErrorKind::DomainMismatch, "record '" + r.name + "' has no discrete side");
  auto rng = stream_rng(cfg.seed, fnv1a(r.name), trial);
  const std::vector<GroupValue> pool = value_pool(r, cfg, rng);
  const std::size_t cap = cfg.max_support.value_or(r.max_support);

  DiscreteBindings b;
  for (const auto& g : r.vars) {
    if (g.kind == VarGroup::Kind::Joint) {
      const std::size_t arity = g.names.size();
      // Distinct tuples; the tuple space can be smaller than the request.
      double space = std::pow(static_cast<double>(pool.size()), static_cast<double>(arity));
      const std::size_t k = support_size(cap, space > 1e6 ? cap : static_cast<std::size_t>(space), rng);
      std::set<JointDist::Tuple> tuples;
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      while (tuples.size() < k) {
        JointDist::Tuple t(arity);
        for (auto& v : t) v = pool[pick(rng)];
        tuples.insert(std::move(t));
      }
      const auto ws = random_weights(k, cfg, rng);
      std::vector<std::pair<JointDist::Tuple, BigInt>> atoms;
      std::size_t i = 0;
      for (const auto& t : tuples) atoms.push_back({t, ws[i++]});
      b.joints.push_back(JointDist::from_weights(g.names, std::move(atoms)));
      continue;
    }
    const std::size_t k = support_size(cap, pool.size(), rng);
    std::vector<GroupValue> values = pool;
    std::shuffle(values.begin(), values.end(), rng);
    values.resize(k);
    const auto ws = random_weights(k, cfg, rng);
    std::vector<std::pair<GroupValue, BigInt>> atoms;
    for (std::size_t i = 0; i < k; ++i) atoms.push_back({values[i], ws[i]});
    // i.i.d. groups bind the first name; check_discrete copies the law.
    b.singles.push_back({g.names.front(), FiniteDist::from_weights(std::move(atoms))});
  }
  return b;
}

std::string format_bindings(const DiscreteBindings& b) {
  std::string out;
  for (const auto& [n, d] : b.singles) out += "# " + n + "\n" + format_distribution(d);
  for (const auto& j : b.joints) out += "# joint\n" + format_joint(j);
  return out;
}

SweepResult random_sweep(const InequalityRecord& r, const SweepConfig& cfg) {
  std::vector<double> slack(cfg.trials);
  std::vector<char> violated(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    const auto rep = check_discrete(r, random_bindings(r, cfg, t));
    slack[t] = rep.slack;
    violated[t] = rep.verdict == Verdict::Violated;
  });

  SweepResult res;
  res.record = r.name;
  res.trials = cfg.trials;
  res.seed = cfg.seed;
  res.min_slack = std::numeric_limits<double>::infinity();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    res.violations += violated[t];
    res.min_slack = std::min(res.min_slack, slack[t]);
    res.max_abs_slack = std::max(res.max_abs_slack, std::abs(slack[t]));
    // equality records: worst = farthest from zero; otherwise most negative
    const double badness = r.rel == Relation::Equal ? std::abs(slack[t]) : -slack[t];
    if (badness > worst) {
      worst = badness;
      res.worst_trial = t;
    }
  }
  if (cfg.trials) res.witness = format_bindings(random_bindings(r, cfg, res.worst_trial));
  return res;
}

ContinuousBindings continuous_suite(const InequalityRecord& r, ContinuousSuite suite, std::uint64_t seed) {
  if (r.domain == Domain::Discrete)
    throw Error(ErrorKind::DomainMismatch, "record '" + r.name + "' has no continuous side");
  auto rng = stream_rng(seed, fnv1a(r.name) ^ (suite == ContinuousSuite::Gaussian ? 0x9e37u : 0x51edu), 0);
  ContinuousBindings out;
  for (const auto& g : r.vars) {
    if (g.kind == VarGroup::Kind::Joint) throw Error(ErrorKind::DomainMismatch, "joint groups need discrete laws");
    ContinuousModel m = suite == ContinuousSuite::LogNormal
                            ? ContinuousModel::lognormal(std::uniform_real_distribution<double>(-0.5, 0.5)(rng),
                                                         std::uniform_real_distribution<double>(0.5, 1.0)(rng))
                            : ContinuousModel::gaussian(std::uniform_real_distribution<double>(-1.0, 1.0)(rng),
                                                        std::uniform_real_distribution<double>(0.5, 1.5)(rng));
    for (const auto& n : g.names) out.emplace(n, m);
  }
  return out;
}

}  // namespace entadd
