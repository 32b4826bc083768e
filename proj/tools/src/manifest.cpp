#include "manifest.hpp"

#include <array>
#include <cinttypes>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "blockleague/errors.hpp"

namespace blockleague::cli {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string RunManifest::hash() const {
  std::ostringstream canon;
  canon << "v=" << tool_version << ";cmd=" << command;
  for (const auto& [name, content_hash] : inputs)
    canon << ";in=" << name << ":" << content_hash;
  for (const auto& [key, value] : settings) canon << ";" << key << "=" << value;
  return fnv1a_hex(canon.str());
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["manifest_hash"] = hash();
  j["tool_version"] = tool_version;
  j["command"] = command;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& [name, content_hash] : inputs) {
    nlohmann::ordered_json in;
    in["file"] = name;
    in["fnv1a"] = content_hash;
    j["inputs"].push_back(in);
  }
  j["settings"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : settings) j["settings"][key] = value;
  j["wall_clock_utc"] = wall_clock_utc;
  for (auto& [key, value] : extra.items()) j[key] = value;
  return j;
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot read file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string utc_now_iso8601() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string full_precision(double v) {
  std::array<char, 64> buf{};
  // %.17g always round-trips an IEEE double; trim to the shortest form that
  // still does so bytes stay stable and readable.
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf.data(), buf.size(), "%.*g", precision, v);
    double back = 0.0;
    std::sscanf(buf.data(), "%lf", &back);
    if (back == v) break;
  }
  return buf.data();
}

std::string percent_2dp(double p) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.2f", 100.0 * p);
  return buf.data();
}

}  // namespace blockleague::cli
