#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace entadd {

inline constexpr const char* kToolVersion = "0.3.0";

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,  // some verdict is not holds / estimated-holds, or a reproduced bound failed
  kExitConfig = 2,     // parse, binding and configuration errors
  kExitEval = 3,       // evaluation errors (support overflow, numerical hazards)
};

// Everything except timestamps is a function of the command line and the
// input files, so two manifests of equal runs differ only in `started`/`finished`.
struct RunManifest {
  std::string command;
  std::string config_json;  // serialized option echo
  std::uint64_t seed = 0;
  std::string version = kToolVersion;
  std::vector<std::pair<std::string, std::string>> inputs;   // path, sha256
  std::vector<std::pair<std::string, std::string>> outputs;  // file name, sha256
  std::string started;
  std::string finished;

  std::string json() const;
};

std::string sha256_hex(const std::string& data);
std::string utc_timestamp();

// Default seed: $ENTADD_SEED when set and numeric, else 1.
std::uint64_t default_seed();

// The whole CLI; returns the exit code. Used by tools/entadd and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entadd
