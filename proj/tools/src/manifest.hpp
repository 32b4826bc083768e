#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace blockleague::cli {

// Everything that determines a run's outputs, plus run metadata.  The
// manifest hash covers only the determining fields (command, inputs by
// basename and content hash, model and sampler settings) so that rerunning
// with the same inputs reproduces every output byte for byte; wall-clock
// and acceptance-rate metadata are recorded in the manifest file without
// entering the hash.
struct RunManifest {
  std::string tool_version;
  std::string command;
  // Input basenames paired with 64-bit content hashes, in input order.
  std::vector<std::pair<std::string, std::string>> inputs;
  // Flat key=value settings (prior, k_max, iterations, seed, ...), in a
  // fixed emission order chosen by each command.
  std::vector<std::pair<std::string, std::string>> settings;

  // Metadata outside the hash.
  std::string wall_clock_utc;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  // FNV-1a over the canonical serialization of the determining fields.
  std::string hash() const;
  nlohmann::ordered_json to_json() const;
};

// FNV-1a 64-bit over a byte string, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

// Reads a whole file; throws blockleague::InvalidInputError when unreadable.
std::string slurp_file(const std::string& path);

// Current UTC time as an ISO-8601 string (second resolution).
std::string utc_now_iso8601();

// Formats a double with enough digits to round-trip exactly.
std::string full_precision(double v);

// Formats a probability as a percentage with two decimals, Table-4 style.
std::string percent_2dp(double p);

}  // namespace blockleague::cli
