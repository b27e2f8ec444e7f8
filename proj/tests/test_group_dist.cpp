#include <doctest.h>

#include "entadd/dist_io.hpp"
#include "entadd/finite_dist.hpp"
#include "entadd/joint_dist.hpp"
#include "support.hpp"

#include <cmath>

using namespace entadd;
using testsupport::error_kind;

TEST_CASE("group values: integers, residues, vectors") {
  CHECK(GroupValue::integer(3) + GroupValue::integer(-5) == GroupValue::integer(-2));
  CHECK(GroupValue::residue(-1, 5) == GroupValue::residue(4, 5));
  CHECK(GroupValue::residue(3, 7) * GroupValue::residue(5, 7) == GroupValue::residue(1, 7));
  CHECK(GroupValue::vector({1, 2}) + GroupValue::vector({3, -2}) == GroupValue::vector({4, 0}));
  CHECK(error_kind([] { (void)(GroupValue::integer(1) + GroupValue::residue(1, 5)); }) == ErrorKind::MixedGroup);
  CHECK(error_kind([] { (void)(GroupValue::integer(1) / GroupValue::integer(0)); }) ==
        ErrorKind::NonInvertibleDivisor);
  // 2 is not a unit mod 6
  CHECK(error_kind([] { (void)(GroupValue::residue(1, 6) / GroupValue::residue(2, 6)); }) ==
        ErrorKind::NonInvertibleDivisor);
}

TEST_CASE("division by negative integers keeps the sign in the numerator") {
  const auto q = GroupValue::integer(3) / GroupValue::integer(-6);
  CHECK(q == GroupValue::rational(Rational(-1, 2)));
  CHECK(GroupValue::integer(-8) / GroupValue::integer(-4) == GroupValue::integer(2));
  const auto r = GroupValue::rational(Rational(2, 3)) / GroupValue::integer(-4);
  CHECK(r == GroupValue::rational(Rational(-1, 6)));
  const BigInt big = BigInt(1) << 80;
  CHECK(GroupValue::integer(big) / GroupValue::integer(-big) == GroupValue::integer(-1));
}

TEST_CASE("finite distributions are reduced and merged") {
  auto d = FiniteDist::from_weights({{GroupValue::integer(1), 2}, {GroupValue::integer(0), 4}, {GroupValue::integer(1), 2}});
  REQUIRE(d.size() == 2);
  CHECK(d.prob(0) == Rational(1, 2));
  CHECK(d.prob(1) == Rational(1, 2));
  CHECK(d.total() == 2);
  CHECK(d.entropy() == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(error_kind([] { (void)FiniteDist::from_probabilities({{GroupValue::integer(0), Rational(1, 3)}}); }) ==
        ErrorKind::InvalidDistribution);
}

TEST_CASE("uniform entropy and convolution against a brute-force oracle") {
  std::vector<GroupValue> s;
  for (int i = 0; i < 10; ++i) s.push_back(GroupValue::integer(i * i));
  CHECK(FiniteDist::uniform(s).entropy() == doctest::Approx(std::log(10.0)).epsilon(1e-14));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testsupport::random_dist(rng, 1 + trial % 7, -9, 9);
    const auto b = testsupport::random_dist(rng, 1 + trial % 5, -9, 9);
    const auto pa = testsupport::pmf_of(a), pb = testsupport::pmf_of(b);
    const auto sum = combine_independent(a, b, BinaryOp::Add);
    CHECK(sum.entropy() ==
          doctest::Approx(testsupport::entropy(testsupport::combine(pa, pb, std::plus<>()))).epsilon(1e-12));
    CHECK(combine_entropy(a, b, BinaryOp::Sub) ==
          doctest::Approx(testsupport::entropy(testsupport::combine(pa, pb, std::minus<>()))).epsilon(1e-12));
    CHECK(combine_entropy(a, b, BinaryOp::Mul) ==
          doctest::Approx(testsupport::entropy(testsupport::combine(pa, pb, std::multiplies<>()))).epsilon(1e-12));
    // exact masses: the sum law is again a probability distribution
    Rational total = 0;
    for (std::size_t i = 0; i < sum.size(); ++i) total += sum.prob(i);
    CHECK(total == 1);
  }
}

TEST_CASE("support cap") {
  std::vector<GroupValue> s;
  for (int i = 0; i < 100; ++i) s.push_back(GroupValue::integer(i * 1000 + i));
  const auto u = FiniteDist::uniform(s);
  CHECK(error_kind([&] { (void)combine_independent(u, u, BinaryOp::Mul, 50); }) == ErrorKind::SupportOverflow);
}

TEST_CASE("distribution text format") {
  const auto d = parse_distribution("# comment\n@group zmod 5\n1 1/3\n4 2/3\n");
  CHECK(d.size() == 2);
  CHECK(d.value(0) == GroupValue::residue(1, 5));
  CHECK(parse_distribution(format_distribution(d)) == d);

  CHECK(error_kind([] { (void)parse_distribution("0 1/2\n1 1/3\n"); }) == ErrorKind::InvalidDistribution);
  CHECK(error_kind([] { (void)parse_distribution("0 1/-2\n1 3/2\n"); }) == ErrorKind::ParseError);
  CHECK(error_kind([] { (void)parse_distribution("0 x/2\n"); }) == ErrorKind::ParseError);
  try {
    (void)parse_distribution("0 1/2\n1 1/3\n", "laws.txt");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("laws.txt") != std::string::npos);
  }

  const auto j = parse_joint("@joint X,Y\n(0,0) 1/2\n(1,1) 1/2\n");
  CHECK(j.coords() == std::vector<std::string>{"X", "Y"});
  CHECK(parse_joint(format_joint(j)) == j);
}

TEST_CASE("joint laws: marginals and information") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto j = testsupport::random_joint(rng, 1 + trial % 9, -3, 3);
    const auto p = testsupport::pmf2_of(j);
    CHECK(j.entropy({"X", "Y"}) == doctest::Approx(testsupport::entropy(p)).epsilon(1e-12));
    CHECK(mutual_information(j, {"X"}, {"Y"}) ==
          doctest::Approx(testsupport::mutual_information(p)).epsilon(1e-9).scale(1.0));
    CHECK(conditional_entropy(j, {"X"}, {"Y"}) ==
          doctest::Approx(j.entropy({"X", "Y"}) - j.entropy({"Y"})).epsilon(1e-12).scale(1.0));
  }
  // independent product: I = 0 exactly up to rounding
  const auto a = FiniteDist::uniform({GroupValue::integer(0), GroupValue::integer(1)});
  const auto ind = join_independent({{"X", a}, {"Y", a}});
  CHECK(std::abs(mutual_information(ind, {"X"}, {"Y"})) < 1e-12);
}

TEST_CASE("conditionally independent copies given the sum") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto j = testsupport::random_joint(rng, 2 + trial % 7, -2, 2);
    const auto c = cond_indep_copies_given_sum(j);
    REQUIRE(c.arity() == 5);
    // both copies have the law of (X,Y)
    const auto p = testsupport::pmf2_of(j);
    CHECK(c.entropy({c.coords()[0], c.coords()[1]}) == doctest::Approx(testsupport::entropy(p)).epsilon(1e-12));
    CHECK(c.entropy({c.coords()[2], c.coords()[3]}) == doctest::Approx(testsupport::entropy(p)).epsilon(1e-12));
    CHECK(std::abs(conditional_mutual_information(c, {c.coords()[0]}, {c.coords()[3]}, {c.coords()[4]})) < 1e-9);
    CHECK(c.entropy({c.coords()[0], c.coords()[2], c.coords()[4]}) ==
          doctest::Approx(testsupport::energy_by_definition(p)).epsilon(1e-12));
  }
}
