#include "entadd/cli.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <stdexcept>

namespace entadd {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("ENTADD_SEED")) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(s, &pos);
      if (pos == std::string(s).size()) return v;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::string RunManifest::json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["config"] = config_json.empty() ? nlohmann::ordered_json::object() : nlohmann::ordered_json::parse(config_json);
  j["seed"] = seed;
  j["version"] = version;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& [p, d] : inputs) j["inputs"].push_back({{"path", p}, {"sha256", d}});
  j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& [p, d] : outputs) j["outputs"].push_back({{"file", p}, {"sha256", d}});
  j["started"] = started;
  j["finished"] = finished;
  return j.dump(2) + "\n";
}

}  // namespace entadd
