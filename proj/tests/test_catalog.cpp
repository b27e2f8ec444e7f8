#include <doctest.h>

#include "entadd/catalog.hpp"
#include "entadd/evaluate.hpp"
#include "entadd/functionals.hpp"
#include "support.hpp"

#include <json.hpp>

#include <cmath>
#include <set>

using namespace entadd;
using testsupport::error_kind;

namespace {

InequalityRecord edited(const std::string& name, const std::string& from, const std::string& to) {
  std::string text = to_text(find_record(name));
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, from.size(), to);
  return parse_record(text);
}

SweepConfig quick(std::size_t trials, std::uint64_t seed = 3) {
  SweepConfig c;
  c.trials = trials;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("quantity DSL: parse, print, errors") {
  const auto q = parse_quantity("2*H[X,Y] - H[X+Y] + 1/2*log(3) - I[X;Y|Z] + max(H[X'],Ht[X*X'])");
  CHECK(structurally_equal(*parse_quantity(to_string(*q)), *q));
  std::set<std::string> ids;
  collect_identifiers(*q, ids);
  CHECK(ids == std::set<std::string>{"X", "X'", "Y", "Z"});

  try {
    (void)parse_quantity("H[X");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 3);
  }
  try {
    (void)parse_quantity("H[X] + Q[Y]");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownFunctional);
  }
}

TEST_CASE("registry: size, names, round trip") {
  const auto& reg = registry();
  CHECK(reg.size() >= 25);
  std::set<std::string> names;
  for (const auto& r : reg) {
    CHECK(names.insert(r.name).second);
    const auto back = parse_record(to_text(r));
    CHECK_MESSAGE(structurally_equal(back, r), r.name);
  }
  const auto all = parse_records(registry_text());
  CHECK(all.size() == reg.size());
  CHECK(error_kind([] { (void)find_record("no-such-record"); }) == ErrorKind::UnknownRecord);
}

TEST_CASE("record text errors point at the line") {
  try {
    (void)parse_records("record r\ndomain: discrete\nvars: X\nlhs: H[X\nrel: <=\nrhs: 0\nend\n", "t.rec");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(std::string(e.what()).find("t.rec:4") != std::string::npos);
  }
  CHECK(error_kind([] {
          (void)parse_record("record r\ndomain: discrete\nvars: X\nlhs: H[Y]\nrel: <=\nrhs: 0\nend\n");
        }) == ErrorKind::UnboundVariable);
}

TEST_CASE("every discrete record holds on a short sweep") {
  for (const auto& r : registry()) {
    if (r.domain == Domain::Continuous) continue;
    const auto s = random_sweep(r, quick(60));
    CHECK_MESSAGE(s.ok(), r.name << " min slack " << s.min_slack << "\n" << s.witness);
    CHECK(s.min_slack >= -1e-9);
  }
}

TEST_CASE("sweeps are reproducible and thread independent") {
  const auto& r = find_record("ruzsa-triangle");
  auto a = quick(80, 7), b = quick(80, 7);
  b.threads = 3;
  const auto s1 = random_sweep(r, a), s2 = random_sweep(r, b);
  CHECK(sweep_csv_row(s1) == sweep_csv_row(s2));
  CHECK(s1.witness == s2.witness);
}

TEST_CASE("mutated coefficient is detected") {
  // the forward energy/sum bound is tight; shrinking 1/2 to 2/5 must fail
  const auto bad = edited("improved-energy-forward", "1/2*H[X] + 1/2*H[Y]", "2/5*H[X] + 2/5*H[Y]");
  const auto s = random_sweep(bad, quick(200));
  CHECK(s.violations > 0);
  CHECK(s.min_slack < -1e-6);
}

TEST_CASE("displayed signs that do not hold are detected as violated") {
  // converse premise with +2I(X;Y): the tight log C flips the sign of I
  const auto converse = edited("symmetric-control-converse", "+ I[X+Y;Y] + I[X;Y]", "+ I[X+Y;Y] - I[X;Y]");
  CHECK(random_sweep(converse, quick(300)).violations > 0);
  // large sum, small energy with + log C
  const auto lse = edited("large-sum-small-energy", "- logC - 2*I[X;Y]", "+ logC - 2*I[X;Y]");
  CHECK(random_sweep(lse, quick(300)).violations > 0);
  // the forward displays themselves hold
  CHECK(random_sweep(find_record("symmetric-control"), quick(300)).ok());
  CHECK(random_sweep(find_record("symmetric-control-sharp"), quick(300)).ok());
}

TEST_CASE("BSG worked instance: X, Y i.i.d. uniform on {0,1}") {
  const auto u = FiniteDist::uniform({GroupValue::integer(0), GroupValue::integer(1)});
  DiscreteBindings b;
  b.singles = {{"X", u}, {"Y", u}};
  // (X,Y) is a joint group in the record: bind the product law as a joint
  DiscreteBindings jb;
  jb.joints.push_back(join_independent({{"X", u}, {"Y", u}}));
  const auto rep = check_discrete(find_record("bsg-sum"), jb);
  CHECK(rep.lhs == doctest::Approx(0.75 * std::log(2.0)).epsilon(1e-12));
  CHECK(rep.rhs == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-12));
  CHECK(std::abs(rep.lhs - 0.519860) < 5e-7);
  CHECK(std::abs(rep.rhs - 1.039721) < 5e-7);
  CHECK(rep.verdict == Verdict::Holds);
  const auto ci = check_discrete(find_record("bsg-conditional-independence"), jb);
  CHECK(std::abs(ci.slack) <= 1e-9);
  CHECK(error_kind([&] { (void)check_discrete(find_record("bsg-sum"), DiscreteBindings{}); }) ==
        ErrorKind::UnboundVariable);
}

TEST_CASE("DSL evaluation agrees with hand-coded functionals") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto j = testsupport::random_joint(rng, 1 + trial % 10, -4, 4);
    const auto p = testsupport::pmf2_of(j);
    ExactEvaluator ev({j});
    CHECK(ev.evaluate(*parse_quantity("2*H[X,Y] - H[X+Y]")).value ==
          doctest::Approx(testsupport::energy_by_definition(p)).epsilon(1e-12));
    CHECK(ev.evaluate(*parse_quantity("I[X;Y]")).value ==
          doctest::Approx(testsupport::mutual_information(p)).epsilon(1e-9).scale(1.0));

    const auto x = testsupport::random_dist(rng, 1 + trial % 6, -5, 5);
    const auto y = testsupport::random_dist(rng, 1 + trial % 5, -5, 5);
    auto ind = ExactEvaluator::independent({{"X", x}, {"Y", y}, {"X'", x}});
    CHECK(ind.evaluate(*parse_quantity("H[X-Y] - 1/2*H[X] - 1/2*H[Y]")).value ==
          doctest::Approx(ruzsa_distance(x, y)).epsilon(1e-12).scale(1.0));
    CHECK(ind.evaluate(*parse_quantity("H[X+X'] - H[X]")).value ==
          doctest::Approx(doubling_suite(x).sigma).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("checks reject mismatched domains and supports") {
  const auto u = FiniteDist::uniform({GroupValue::integer(0), GroupValue::integer(1)});
  DiscreteBindings b;
  b.singles = {{"X", u}, {"Y", u}, {"Z", u}, {"W", u}};
  CHECK(error_kind([&] { (void)check_discrete(find_record("ring-pr"), b); }) == ErrorKind::DomainMismatch);
  CHECK(error_kind([&] { (void)check_discrete(find_record("slopes-minus"), b); }) == ErrorKind::DomainMismatch);
  McConfig cfg;
  CHECK(error_kind([&] {
          (void)check_continuous(find_record("energy-identity"), {{"X", ContinuousModel::gaussian(0, 1)}}, cfg);
        }) == ErrorKind::DomainMismatch);
}

TEST_CASE("continuous suites on closed-form records") {
  McConfig cfg;
  const auto& r = find_record("square-quotient-lower");
  const auto rep = check_continuous(r, continuous_suite(r, ContinuousSuite::LogNormal, 1), cfg);
  CHECK(rep.verdict == Verdict::Holds);
  CHECK(rep.slack == doctest::Approx(0.25 * std::log(2.0)).epsilon(1e-12));
  const auto& inv = find_record("inverse-scaling");
  CHECK(check_continuous(inv, continuous_suite(inv, ContinuousSuite::LogNormal, 4), cfg).verdict == Verdict::Holds);
}

TEST_CASE("reports serialize") {
  const auto u = FiniteDist::uniform({GroupValue::integer(1), GroupValue::integer(2)});
  DiscreteBindings b;
  b.singles = {{"X", u}, {"Y", u}};
  const auto rep = check_discrete(find_record("max-bound"), b);
  const auto j = nlohmann::json::parse(report_json(rep));
  CHECK(j["record"] == "max-bound");
  CHECK(j["verdict"] == "holds");
  CHECK(j["slack"].get<double>() == doctest::Approx(rep.slack));
  CHECK(report_csv_row(rep).rfind("max-bound,exact,", 0) == 0);
}
