#include <doctest.h>

#include "entadd/cli.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace entadd;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "entadd");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / ("entadd_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string write(const fs::path& p, const std::string& body) {
  std::ofstream(p) << body;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("eval: exact, closed form, syntax error") {
  const auto dir = scratch();
  const auto bits = write(dir / "bits.txt", "0 1/2\n1 1/2\n");
  auto r = cli({"eval", "2*H[X,Y]-H[X+Y]", "--bind", "X=Y=" + bits, "--joint", "independent"});
  CHECK(r.code == 0);
  CHECK(r.out == "value = 1.7328679514\n");  // 5/2 log 2

  r = cli({"eval", "h[X+Y]-h[X]", "--bind", "X=gaussian(0,1)", "--bind", "Y=gaussian(0,1)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0.34657359028") != std::string::npos);

  r = cli({"eval", "H[X"});
  CHECK(r.code == 2);
  CHECK(r.err.find("\n     ^") != std::string::npos);  // caret under offset 3
  CHECK(r.err.find("offset 3") != std::string::npos);
}

TEST_CASE("eval: binding and evaluation errors") {
  const auto dir = scratch();
  const auto bits = write(dir / "bits.txt", "0 1/2\n1 1/2\n");
  const auto broken = write(dir / "broken.txt", "0 1/2\n1 1/3\n");
  CHECK(cli({"eval", "H[X+Y]", "--bind", "X=" + bits}).code == 2);                 // Y unbound
  CHECK(cli({"eval", "H[X]", "--bind", "X=" + broken}).code == 2);                 // masses
  CHECK(cli({"eval", "H[X]", "--bind", "X=" + (dir / "missing.txt").string()}).code == 2);
  CHECK(cli({"eval", "H[X]", "--bind", "X=" + bits, "--bind", "X=" + bits}).code == 2);
  CHECK(cli({"eval", "H[X/Y]", "--bind", "X=Y=" + bits}).code == 3);               // division by zero
  CHECK(cli({"eval", "H[X]", "--bind", "X=" + bits, "--mode", "mc"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
}

TEST_CASE("check: single record, sweeps, exit codes") {
  const auto dir = scratch();
  const auto pos = write(dir / "pos.txt", "1 1/3\n2 1/3\n5 1/3\n");
  auto r = cli({"check", "ring-pr", "--bind", "X=Y=Z=W=" + pos});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("record,mode,seed,lhs,rhs,slack,ci,verdict\nring-pr,exact,", 0) == 0);

  r = cli({"check", "bsg-theorem", "--sweep", "50"});
  CHECK(r.code == 0);
  CHECK(r.out.find("bsg-theorem,50,") != std::string::npos);

  CHECK(cli({"check", "no-such-record"}).code == 2);
  CHECK(cli({"check"}).code == 2);
  CHECK(cli({"check", "ring-pr", "--all"}).code == 2);
  // a continuous-only record runs both default suites
  r = cli({"check", "slopes-minus", "--samples", "16384"});
  CHECK(r.code == 0);
  CHECK(r.out.find("slopes-minus[lognormal]") != std::string::npos);
  CHECK(r.out.find("slopes-minus[gaussian]") != std::string::npos);
}

TEST_CASE("check --all is independent of the worker count") {
  const auto a = cli({"check", "--all", "--sweep", "20", "--seed", "7", "--threads", "1", "--samples", "8192"});
  const auto b = cli({"check", "--all", "--sweep", "20", "--seed", "7", "--threads", "3", "--samples", "8192"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("reports, manifests and digests") {
  const auto dir = scratch() / "run";
  fs::remove_all(dir);
  const auto r = cli({"reproduce", "sidon-ex2", "--N", "1,2", "--out", dir.string()});
  CHECK(r.code == 0);
  const auto table = slurp(dir / "table.csv");
  CHECK(table == r.out);
  const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(m["version"] == kToolVersion);
  CHECK(m["outputs"][0]["file"] == "table.csv");
  CHECK(m["outputs"][0]["sha256"] == sha256_hex(table));
  CHECK(m["config"]["N"] == nlohmann::json::array({1, 2}));
  CHECK(!m["started"].get<std::string>().empty());
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("reproduce tables") {
  auto r = cli({"reproduce", "sidon-ex2", "--N", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find(",3/4,3/4,yes") != std::string::npos);
  r = cli({"reproduce", "sumprod-ex2", "--n", "1000", "--eps", "0.6"});
  CHECK(r.code == 0);
  CHECK(cli({"reproduce", "sumprod-ex3"}).code == 2);
  CHECK(cli({"reproduce", "sumprod-ex2", "--n", "8"}).code == 2);
}

TEST_CASE("search writes its files") {
  const auto dir = scratch() / "search";
  fs::remove_all(dir);
  auto r = cli({"search", "--max", "H[X]", "--support", "0..9", "--restarts", "2", "--epochs", "2", "--steps", "3",
                "--out", dir.string()});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(std::abs(j["value"].get<double>() - std::log(10.0)) < 1e-6);
  CHECK(fs::exists(dir / "best.dist"));
  CHECK(slurp(dir / "trace.csv").rfind("iteration,value\n", 0) == 0);
  CHECK(fs::exists(dir / "manifest.json"));

  r = cli({"search", "--min", "H[X]", "--support", "0..9", "--restarts", "2", "--epochs", "2", "--steps", "5"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["guard"]["triggered"] == true);
  CHECK(r.err.find("guard") != std::string::npos);

  CHECK(cli({"search", "--max", "H[X]", "--support", "0..30000"}).code == 3);
  CHECK(cli({"search", "--support", "0..9"}).code == 2);
  CHECK(cli({"search", "--max", "H[X", "--support", "0..9"}).code == 2);
}

TEST_CASE("default seed from the environment") {
  ::setenv("ENTADD_SEED", "42", 1);
  CHECK(default_seed() == 42);
  ::setenv("ENTADD_SEED", "junk", 1);
  CHECK(default_seed() == 1);
  ::unsetenv("ENTADD_SEED");
  CHECK(default_seed() == 1);
}

TEST_CASE("registry listing") {
  const auto r = cli({"registry", "--names"});
  CHECK(r.code == 0);
  CHECK(r.out.find("bsg-theorem,discrete\n") != std::string::npos);
  CHECK(cli({"registry", "energy-identity"}).out.rfind("record energy-identity\n", 0) == 0);
}
