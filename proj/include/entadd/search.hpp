#pragma once

#include "entadd/finite_dist.hpp"
#include "entadd/quantity.hpp"
#include "entadd/setcalc.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace entadd {

// ---- simplex search -------------------------------------------------------

// Every identifier in the quantity is bound to an independent copy of the
// candidate law on `support` (X, X', X'' ... are i.i.d.).
struct Objective {
  QuantityPtr quantity;
  std::string text;  // as given, for the config echo
  bool maximize = false;
  std::vector<GroupValue> support;
};

struct SearchConfig {
  std::uint64_t seed = 1;
  unsigned restarts = 20;
  unsigned epochs = 10;           // annealing epochs per restart
  unsigned steps = 10;            // descent steps per epoch
  double eta = 1.0;               // initial exponentiated-gradient step
  double fd_step = 1e-5;          // central differences in probability space
  std::size_t fd_block = 64;      // coordinates differentiated per step (all if support is smaller)
  std::int64_t denominator_cap = 1'000'000'000;
  double t0 = 1.0;
  double cooling = 0.95;
  double h_floor = 0.1;  // iterates with H(X) below this are rejected (0 disables)
  unsigned threads = 1;
  std::size_t support_cap = 20'000;
  std::optional<FiniteDist> initial;  // default: uniform on the support
};

struct TracePoint {
  std::size_t iteration;
  double value;  // best value of the descent phase so far
};

struct SearchResult {
  FiniteDist best = FiniteDist::point_mass(GroupValue::integer(0));
  double value = 0.0;          // exact re-evaluation of `best`
  double initial_value = 0.0;  // objective at the initial point
  std::vector<TracePoint> trace;  // winning restart
  unsigned best_restart = 0;
  std::size_t evaluations = 0;
  std::size_t guard_rejections = 0;  // iterates rejected by the H-floor guard
  bool guard_at_initial = false;     // the initial point itself is below the floor
  SearchConfig config;
};

// Exact value of the objective at d (all identifiers i.i.d. ~ d).
double evaluate_objective(const Objective& obj, const FiniteDist& d);
// Rounds probabilities to integer weights of total about `cap` (every atom keeps weight >= 1).
FiniteDist rationalize(const std::vector<GroupValue>& support, const std::vector<double>& probs, std::int64_t cap);

SearchResult optimize_over_simplex(const Objective& obj, const SearchConfig& cfg);

std::string search_result_json(const SearchResult& r, const Objective& obj);
std::string trace_csv(const SearchResult& r);

// ---- constructions --------------------------------------------------------

// P(0) = 1/3, P(i) = 2/(3n) for i = 1..n.
FiniteDist build_zero_inflated(std::int64_t n);

struct GenericAugmented {
  std::int64_t n = 0;
  double eps = 0.0;
  std::vector<GroupValue> b;  // 2n * 4^i, i < ceil(n^(1 - eps/2))
  FiniteSet a;                // {1..n} union B
  FiniteDist uniform = FiniteDist::point_mass(GroupValue::integer(0));  // uniform on A
};

// Throws GenericityCheckFailed unless every sum involving an element of B
// is represented exactly once in A+A (checked exactly).
GenericAugmented build_generic_augmented(std::int64_t n, double eps);
// |A+A| and H(U+U') for U uniform on A, from the representation counts that
// the genericity check certifies: the sums inside {1..n} follow the triangle
// law, every other sum has exactly one unordered representation.
struct GenericSumSummary {
  BigInt sumset_size;
  double entropy = 0.0;
};
GenericSumSummary generic_sum_summary(const GenericAugmented& g);

// variant 1: N-element set with exactly one Sidon violation;
// variant 2: uniform on {10^k, 2*10^k, 4*10^k, 5*10^k : k < N}.
FiniteDist build_sidon_examples(std::int64_t n, int variant);

// ---- reproductions ----------------------------------------------------------

struct ReproTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool pass = true;  // the example's displayed bound held on every row
  std::vector<std::string> notes;

  std::string csv() const;
};

ReproTable reproduce_sidon_ex1(const std::vector<std::int64_t>& ns);
ReproTable reproduce_sidon_ex2(const std::vector<std::int64_t>& ns);
ReproTable reproduce_sumprod_ex1(const std::vector<std::int64_t>& ns);
ReproTable reproduce_sumprod_ex2(std::int64_t n, double eps);

}  // namespace entadd
