#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blockleague/model.hpp"
#include "blockleague/sampler.hpp"

namespace blockleague::cli {

// fit: sample, relabel, summarize one season or a directory of seasons.
struct FitOptions {
  std::vector<std::string> season_files;  // already resolved, in batch order
  std::string out_dir = "out";
  PriorConfig prior;
  SamplerConfig sampler;
  int chains = 1;
  int jobs = 1;
  double threshold = 0.5;
};

// indices: classical balance indices, optional posterior overlay.
struct IndicesOptions {
  std::vector<std::string> season_files;
  std::string out_dir = "out";
  std::string summaries_dir;  // empty: no overlay
  int points_per_win = 3;
};

// simulate: draw a synthetic season from a planted block structure.
struct SimulateOptions {
  std::vector<int> block_sizes;
  std::optional<double> edge;       // two-block convenience parameter
  std::string p_spec;               // "a,b,c;d,e,f;..." K*K rows
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  std::string name = "synthetic";
};

// oracle: exact enumeration, optionally compared against a fit summary.
struct OracleOptions {
  std::string season_file;
  std::string out_dir = "out";
  PriorConfig prior;
  double budget = 1e7;
  std::string compare_summary;  // path to a fit summary.json, optional
};

// summarize: recompute the posterior summary from a stored trace.
struct SummarizeOptions {
  std::string trace_file;
  std::string season_file;
  std::string out_dir = "out";
  int k_max = 20;
  double threshold = 0.5;
  std::array<double, 3> beta = {1.0, 1.0, 1.0};
};

int run_fit(const FitOptions& opt);
int run_indices(const IndicesOptions& opt);
int run_simulate(const SimulateOptions& opt);
int run_oracle(const OracleOptions& opt);
int run_summarize(const SummarizeOptions& opt);

// All *.csv files directly inside `dir`, sorted by filename.
std::vector<std::string> discover_seasons(const std::string& dir);

// "data/seasons/2122.csv" -> "2122".
std::string season_id_from_path(const std::string& path);

}  // namespace blockleague::cli
