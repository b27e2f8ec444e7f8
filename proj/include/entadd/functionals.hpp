#pragma once

#include "entadd/finite_dist.hpp"
#include "entadd/joint_dist.hpp"

#include <optional>
#include <vector>

namespace entadd {

// Entropic additive energy A(X,Y) of the first two coordinates of `j`:
// the entropy of two copies conditionally independent given X+Y, checked
// against 2H(X,Y) - H(X+Y) (CrossCheckMismatch beyond 1e-9 nats).
double additive_energy(const JointDist& j);
double additive_energy_independent(const FiniteDist& x, const FiniteDist& y);

// d(X,Y) = H(X'-Y') - H(X)/2 - H(Y)/2 over independent copies.
double ruzsa_distance(const FiniteDist& x, const FiniteDist& y);
// Quotient analogue, H(X'/Y') - H(X)/2 - H(Y)/2; Y needs unit support.
double mult_ruzsa_distance(const FiniteDist& x, const FiniteDist& y);

struct DoublingSuite {
  double sigma = 0.0;                 // H(X1+X2) - H(X)
  double delta = 0.0;                 // H(X1-X2) - H(X)
  std::optional<double> sigma_tilde;  // H(X1*X2) - H(X), ring supports only
  std::optional<double> delta_tilde;  // H(X1/X2) - H(X), unit supports only
};

DoublingSuite doubling_suite(const FiniteDist& d);

struct SidonPair {
  GroupValue a;  // a <= b
  GroupValue b;
  double r = 0.0;
  bool at_least_log2 = false;  // exact test of R(a,b) >= log 2
};

struct SidonAudit {
  bool is_support_sidon = false;
  double sidon_gap = 0.0;  // H(X) - s(X) - log2 (1 - sum P^2)
  double expected_r = 0.0;  // E R(X,X'), the same quantity via the R table
  std::vector<SidonPair> r_table;
  Rational p_star;   // max atom probability
  Rational p_floor;  // min atom probability
  double entropy = 0.0;
  double doubling = 0.0;  // s(X)
  Rational collision;     // sum P(a)^2
};

SidonAudit sidon_audit(const FiniteDist& d);

struct SidonPrune {
  std::vector<GroupValue> kept;  // B
  Rational retained_prob;        // P(X in B)
  double bound = 0.0;            // 1 - C / (p_floor log 2), C = E R(X,X')
};

SidonPrune sidon_prune(const FiniteDist& d);

struct MaxSidonSubset {
  Rational prob;
  std::vector<GroupValue> witness;
};

MaxSidonSubset max_sidon_subset_prob(const FiniteDist& d);

// Two unordered pairs {a,b} != {c,d} with a+b = c+d.
struct SidonViolation {
  GroupValue a, b, c, d;
};

bool is_sidon(const std::vector<GroupValue>& set);
std::vector<SidonViolation> sidon_violations(const std::vector<GroupValue>& set);

}  // namespace entadd
