#include <doctest.h>

#include "entadd/functionals.hpp"
#include "entadd/setcalc.hpp"
#include "support.hpp"

#include <cmath>

using namespace entadd;
using testsupport::error_kind;

namespace {

FiniteDist uniform_ints(std::initializer_list<std::int64_t> xs) {
  std::vector<GroupValue> v;
  for (auto x : xs) v.push_back(GroupValue::integer(x));
  return FiniteDist::uniform(v);
}

}  // namespace

TEST_CASE("additive energy: two routes and the definition") {
  const double l2 = std::log(2.0);
  const auto u = uniform_ints({0, 1});
  // 2H(X,Y) - H(X+Y) = 4 log2 - 3/2 log2
  CHECK(additive_energy_independent(u, u) == doctest::Approx(2.5 * l2).epsilon(1e-14));

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto j = testsupport::random_joint(rng, 1 + trial % 12, -4, 4);
    const auto p = testsupport::pmf2_of(j);
    CHECK(additive_energy(j) == doctest::Approx(testsupport::energy_by_definition(p)).epsilon(1e-12));
  }
}

TEST_CASE("Ruzsa distance and doubling constants") {
  const double l2 = std::log(2.0);
  const auto u = uniform_ints({0, 1});
  const auto s = doubling_suite(u);
  CHECK(s.sigma == doctest::Approx(0.5 * l2).epsilon(1e-14));
  CHECK(s.delta == doctest::Approx(0.5 * l2).epsilon(1e-14));
  REQUIRE(s.sigma_tilde);
  // {0,1}*{0,1}: P(0) = 3/4, P(1) = 1/4
  CHECK(*s.sigma_tilde == doctest::Approx(-(0.75 * std::log(0.75) + 0.25 * std::log(0.25)) - l2).epsilon(1e-14));
  CHECK_FALSE(s.delta_tilde);  // 0 is not a unit

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = testsupport::random_dist(rng, 1 + trial % 6, -6, 6);
    const auto y = testsupport::random_dist(rng, 1 + trial % 4, -6, 6);
    const auto px = testsupport::pmf_of(x), py = testsupport::pmf_of(y);
    const double oracle = testsupport::entropy(testsupport::combine(px, py, std::minus<>())) -
                          testsupport::entropy(px) / 2 - testsupport::entropy(py) / 2;
    CHECK(ruzsa_distance(x, y) == doctest::Approx(oracle).epsilon(1e-12).scale(1.0));
    CHECK(ruzsa_distance(x, x) >= -1e-12);
  }
  CHECK(error_kind([&] { (void)mult_ruzsa_distance(u, u); }) == ErrorKind::NonInvertibleDivisor);
}

TEST_CASE("Sidon audit: equality exactly on Sidon supports") {
  // {1,2,4,8} is Sidon, {1,2,3} is not
  const auto sidon = sidon_audit(uniform_ints({1, 2, 4, 8}));
  CHECK(sidon.is_support_sidon);
  CHECK(std::abs(sidon.sidon_gap) <= 1e-9);
  CHECK(sidon.collision == Rational(1, 4));
  const auto not_sidon = sidon_audit(uniform_ints({1, 2, 3}));
  CHECK_FALSE(not_sidon.is_support_sidon);
  CHECK(not_sidon.sidon_gap > 1e-9);
  CHECK(not_sidon.expected_r == doctest::Approx(not_sidon.sidon_gap).epsilon(1e-9));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = testsupport::random_dist(rng, 2 + trial % 7, -15, 15);
    const auto a = sidon_audit(d);
    CHECK(a.is_support_sidon == is_sidon(d.values()));
    CHECK(a.is_support_sidon == (a.sidon_gap <= 1e-9));
    CHECK(a.sidon_gap >= -1e-12);
  }
}

TEST_CASE("Sidon pruning keeps a Sidon set meeting its bound") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = testsupport::random_dist(rng, 2 + trial % 8, 0, 12);
    const auto p = sidon_prune(d);
    CHECK(is_sidon(p.kept));
    CHECK(static_cast<double>(p.retained_prob) >= p.bound - 1e-12);
  }
}

TEST_CASE("largest Sidon subset") {
  const auto m = max_sidon_subset_prob(uniform_ints({1, 2, 4, 5}));
  CHECK(m.prob == Rational(3, 4));
  CHECK(is_sidon(m.witness));
  const auto v = sidon_violations({GroupValue::integer(1), GroupValue::integer(2), GroupValue::integer(4),
                                   GroupValue::integer(5)});
  REQUIRE(v.size() == 1);
}

TEST_CASE("set calculus") {
  auto set = [](std::initializer_list<std::int64_t> xs) {
    std::vector<GroupValue> v;
    for (auto x : xs) v.push_back(GroupValue::integer(x));
    return FiniteSet::from(v);
  };
  const auto a = set({0, 1, 2});
  CHECK(set_combine(a, a, BinaryOp::Add).size() == 5);
  CHECK(set_combine_size(a, a, BinaryOp::Sub) == 5);
  // r = 1,2,3,2,1
  CHECK(set_energy(a, a) == 19);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto x = testsupport::random_dist(rng, 1 + trial % 9, -20, 20);
    const auto y = testsupport::random_dist(rng, 1 + trial % 6, -20, 20);
    const auto z = testsupport::random_dist(rng, 1 + trial % 5, -20, 20);
    const auto A = FiniteSet::from(x.values()), B = FiniteSet::from(y.values()), C = FiniteSet::from(z.values());
    CHECK(set_checks(A, B, C).all_hold());
    CHECK(set_combine_size(A, B, BinaryOp::Add) == set_combine(A, B, BinaryOp::Add).size());
    // energy by brute force
    BigInt e = 0;
    for (const auto& a1 : A.elements())
      for (const auto& a2 : A.elements())
        for (const auto& b1 : B.elements())
          for (const auto& b2 : B.elements()) e += (a1 + b1 == a2 + b2) ? 1 : 0;
    CHECK(set_energy(A, B) == e);
  }
}
