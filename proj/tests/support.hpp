#pragma once

// Test helpers: random laws and brute-force oracles written directly in
// doubles, independent of the library's exact machinery.

#include "entadd/error.hpp"
#include "entadd/finite_dist.hpp"
#include "entadd/joint_dist.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace testsupport {

using entadd::BigInt;
using entadd::FiniteDist;
using entadd::GroupValue;
using entadd::JointDist;

inline FiniteDist random_dist(std::mt19937_64& rng, std::size_t k, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> pool;
  for (auto v = lo; v <= hi; ++v) pool.push_back(v);
  std::shuffle(pool.begin(), pool.end(), rng);
  if (k > pool.size()) k = pool.size();
  std::uniform_int_distribution<int> w(1, 24);
  std::vector<std::pair<GroupValue, BigInt>> atoms;
  for (std::size_t i = 0; i < k; ++i) atoms.push_back({GroupValue::integer(pool[i]), BigInt(w(rng))});
  return FiniteDist::from_weights(std::move(atoms));
}

// Joint law of (X,Y) on k distinct random integer pairs.
inline JointDist random_joint(std::mt19937_64& rng, std::size_t k, std::int64_t lo, std::int64_t hi,
                              std::vector<std::string> names = {"X", "Y"}) {
  std::uniform_int_distribution<std::int64_t> v(lo, hi);
  std::uniform_int_distribution<int> w(1, 24);
  std::set<std::vector<std::int64_t>> seen;
  std::vector<std::pair<JointDist::Tuple, BigInt>> atoms;
  const auto space = static_cast<double>(std::pow(double(hi - lo + 1), double(names.size())));
  if (static_cast<double>(k) > space) k = static_cast<std::size_t>(space);
  while (atoms.size() < k) {
    std::vector<std::int64_t> t(names.size());
    for (auto& x : t) x = v(rng);
    if (!seen.insert(t).second) continue;
    JointDist::Tuple tuple;
    for (auto x : t) tuple.push_back(GroupValue::integer(x));
    atoms.push_back({tuple, BigInt(w(rng))});
  }
  return JointDist::from_weights(std::move(names), std::move(atoms));
}

// ---- double-precision oracles -----------------------------------------------

using Pmf = std::map<std::int64_t, double>;
using Pmf2 = std::map<std::pair<std::int64_t, std::int64_t>, double>;

inline Pmf pmf_of(const FiniteDist& d) {
  Pmf p;
  for (std::size_t i = 0; i < d.size(); ++i) p[d.value(i).small_int()] += d.prob_double(i);
  return p;
}

inline Pmf2 pmf2_of(const JointDist& j) {
  Pmf2 p;
  const double total = static_cast<double>(j.total());
  for (std::size_t i = 0; i < j.size(); ++i)
    p[{j.tuple(i)[0].small_int(), j.tuple(i)[1].small_int()}] += static_cast<double>(j.weight(i)) / total;
  return p;
}

template <class Map>
double entropy(const Map& m) {
  double h = 0.0;
  for (const auto& [k, p] : m)
    if (p > 0) h -= p * std::log(p);
  return h;
}

template <class Op>
Pmf combine(const Pmf& a, const Pmf& b, Op op) {
  Pmf out;
  for (const auto& [x, p] : a)
    for (const auto& [y, q] : b) out[op(x, y)] += p * q;
  return out;
}

inline double mutual_information(const Pmf2& j) {
  Pmf px, py;
  for (const auto& [k, p] : j) {
    px[k.first] += p;
    py[k.second] += p;
  }
  return entropy(px) + entropy(py) - entropy(j);
}

// A(X,Y) = H(X1,X2,S) for two copies of (X,Y) conditionally independent
// given S = X+Y, straight from the definition.
inline double energy_by_definition(const Pmf2& j) {
  std::map<std::int64_t, std::vector<std::pair<std::int64_t, double>>> fibre;  // s -> (x, p)
  for (const auto& [k, p] : j) fibre[k.first + k.second].push_back({k.first, p});
  double h = 0.0;
  for (const auto& [s, xs] : fibre) {
    double ps = 0.0;
    for (const auto& [x, p] : xs) ps += p;
    for (const auto& [x1, p1] : xs)
      for (const auto& [x2, p2] : xs) {
        const double q = p1 * p2 / ps;
        h -= q * std::log(q);
      }
  }
  return h;
}

// H(X1+Y2 | S) in the same coupling.
inline double coupled_cross_sum_entropy(const Pmf2& j) {
  std::map<std::int64_t, std::vector<std::pair<std::int64_t, double>>> fibre;
  for (const auto& [k, p] : j) fibre[k.first + k.second].push_back({k.first, p});
  double h = 0.0;
  for (const auto& [s, xs] : fibre) {
    double ps = 0.0;
    for (const auto& [x, p] : xs) ps += p;
    std::map<std::int64_t, double> cross;  // x1 + y2 = x1 + s - x2
    for (const auto& [x1, p1] : xs)
      for (const auto& [x2, p2] : xs) cross[x1 + s - x2] += p1 * p2 / (ps * ps);
    h += ps * entropy(cross);
  }
  return h;
}

template <class F>
entadd::ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const entadd::Error& e) {
    return e.kind();
  }
  throw std::runtime_error("expected an entadd::Error");
}

}  // namespace testsupport
