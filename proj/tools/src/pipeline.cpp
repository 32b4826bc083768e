#include "pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "blockleague/balance.hpp"
#include "blockleague/errors.hpp"
#include "blockleague/league_data.hpp"
#include "blockleague/posterior.hpp"
#include "blockleague/relabel.hpp"
#include "blockleague/simulate.hpp"
#include "manifest.hpp"

namespace fs = std::filesystem;

namespace blockleague::cli {

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot write file: " + path.string());
  out << content;
  if (!out) throw InvalidInputError("write failed: " + path.string());
}

std::string basename_of(const std::string& path) {
  return fs::path(path).filename().string();
}

std::string prior_name(const PriorConfig& prior) {
  return prior.k_prior == KPrior::kTruncatedPoisson1 ? "poisson" : "uniform";
}

std::string beta_string(const std::array<double, 3>& beta) {
  return full_precision(beta[0]) + "," + full_precision(beta[1]) + "," +
         full_precision(beta[2]);
}

void append_model_settings(RunManifest& man, const PriorConfig& prior) {
  man.settings.emplace_back("prior", prior_name(prior));
  man.settings.emplace_back("k_max", std::to_string(prior.k_max));
  man.settings.emplace_back("gamma0", full_precision(prior.gamma0));
  man.settings.emplace_back("beta", beta_string(prior.beta));
}

void append_sampler_settings(RunManifest& man, const SamplerConfig& cfg,
                             int chains) {
  man.settings.emplace_back("iterations", std::to_string(cfg.iterations));
  man.settings.emplace_back("burn_in", std::to_string(cfg.burn_in));
  man.settings.emplace_back("thinning", std::to_string(cfg.thinning));
  man.settings.emplace_back("seed", std::to_string(cfg.rng_seed));
  man.settings.emplace_back("chains", std::to_string(chains));
}

nlohmann::ordered_json summary_json(const PosteriorSummary& s,
                                    const std::vector<std::string>& teams,
                                    const std::string& season_id,
                                    const std::string& manifest_hash) {
  nlohmann::ordered_json j;
  j["manifest_hash"] = manifest_hash;
  j["season"] = season_id;
  j["n"] = teams.size();
  j["teams"] = teams;
  j["k_probs"] = s.k_probs;
  nlohmann::ordered_json table = nlohmann::ordered_json::array();
  for (double p : s.k_probs) table.push_back(percent_2dp(p));
  j["k_table_percent"] = table;
  nlohmann::ordered_json alloc = nlohmann::ordered_json::object();
  for (const auto& [k, matrix] : s.alloc_probs_given_k)
    alloc[std::to_string(k)] = matrix;
  j["alloc_probs_given_k"] = alloc;
  j["top_block_marginal"] = s.top_block_marginal;
  nlohmann::ordered_json roster = nlohmann::ordered_json::array();
  for (int i : s.top_block_roster) roster.push_back(teams[i]);
  j["top_block_roster"] = roster;
  j["top_block_roster_indices"] = s.top_block_roster;
  j["top_block_size"] = s.top_block_size;
  j["threshold"] = s.threshold;
  return j;
}

nlohmann::ordered_json interaction_json(const InteractionPosterior& ip) {
  nlohmann::ordered_json j;
  j["k"] = ip.k;
  j["cells"] = nlohmann::ordered_json::array();
  for (const InteractionCell& c : ip.cells) {
    nlohmann::ordered_json cell;
    cell["home_block"] = c.home_block;
    cell["away_block"] = c.away_block;
    cell["dirichlet"] = c.dirichlet;
    cell["mean"] = c.mean;
    cell["sd"] = c.sd;
    cell["q025"] = c.q025;
    cell["q975"] = c.q975;
    j["cells"].push_back(cell);
  }
  return j;
}

struct MapAllocation {
  int k = 1;
  std::vector<int> z;
};

// Modal K (non-empty blocks), then the modal relabelled allocation among
// the samples with that many non-empty blocks (ties resolved toward the
// lexicographically smallest vector).  Identified samples use the dense
// labels 1..occ, so the occupancy of a sample is its largest label.
MapAllocation map_allocation(const RelabeledTrace& trace,
                             const PosteriorSummary& s) {
  MapAllocation out;
  double best = -1.0;
  for (std::size_t k = 0; k < s.k_probs.size(); ++k)
    if (s.k_probs[k] > best) {
      best = s.k_probs[k];
      out.k = static_cast<int>(k) + 1;
    }
  std::map<std::vector<int>, long> counts;
  for (const TraceSample& sample : trace.samples) {
    const int occ = *std::max_element(sample.z.begin(), sample.z.end());
    if (occ == out.k) ++counts[sample.z];
  }
  long best_count = 0;
  for (const auto& [z, count] : counts)
    if (count > best_count) {
      best_count = count;
      out.z = z;
    }
  return out;
}

nlohmann::ordered_json acceptance_json(const std::vector<Trace>& traces) {
  auto rate = [](std::uint64_t accepts, std::uint64_t attempts) {
    return attempts == 0 ? 0.0
                         : static_cast<double>(accepts) /
                               static_cast<double>(attempts);
  };
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < traces.size(); ++c) {
    const MoveCounters& m = traces[c].counters;
    nlohmann::ordered_json j;
    j["chain"] = c;
    j["mk_attempts"] = m.mk_attempts;
    j["mk_accept_rate"] = rate(m.mk_accepts, m.mk_attempts);
    j["gs_site_attempts"] = m.gs_site_attempts;
    j["gs_accept_rate"] = rate(m.gs_site_accepts, m.gs_site_attempts);
    j["ae_attempts"] = m.ae_attempts;
    j["ae_accept_rate"] = rate(m.ae_accepts, m.ae_attempts);
    arr.push_back(j);
  }
  return arr;
}

struct SeasonOutcome {
  std::string id;
  bool ok = false;
  std::string error_kind;
  std::string error;
  std::vector<std::string> teams;
  PosteriorSummary summary;
};

SeasonOutcome fit_one(const std::string& path, const FitOptions& opt) {
  SeasonOutcome out;
  out.id = season_id_from_path(path);
  try {
    const std::string bytes = slurp_file(path);
    ResultsMatrix r = parse_match_csv(bytes);

    RunManifest man;
    man.tool_version = BLOCKLEAGUE_VERSION;
    man.command = "fit";
    man.inputs.emplace_back(basename_of(path), fnv1a_hex(bytes));
    append_model_settings(man, opt.prior);
    append_sampler_settings(man, opt.sampler, opt.chains);
    man.settings.emplace_back("threshold", full_precision(opt.threshold));
    const std::string hash = man.hash();

    const fs::path dir = fs::path(opt.out_dir) / out.id;
    fs::create_directories(dir);

    std::vector<Trace> traces;
    traces.reserve(opt.chains);
    for (int c = 0; c < opt.chains; ++c) {
      SamplerConfig cfg = opt.sampler;
      cfg.rng_stream = static_cast<std::uint64_t>(c);
      traces.push_back(run_sampler(r, opt.prior, cfg));
      const std::string name =
          opt.chains == 1 ? "trace.csv"
                          : "trace_chain" + std::to_string(c) + ".csv";
      write_file(dir / name, write_trace(traces.back(), hash));
    }

    Trace pooled = traces.front();
    for (std::size_t c = 1; c < traces.size(); ++c)
      pooled.samples.insert(pooled.samples.end(), traces[c].samples.begin(),
                            traces[c].samples.end());

    RelabeledTrace relabeled = relabel_trace(pooled);
    apply_strongest_identification(relabeled, r);
    PosteriorSummary s = summarize(relabeled, opt.prior.k_max, opt.threshold);

    const MapAllocation map = map_allocation(relabeled, s);
    InteractionPosterior ip =
        interaction_posterior(r, BlockState{map.z, map.k}, opt.prior.beta);

    nlohmann::ordered_json j = summary_json(s, r.teams(), out.id, hash);
    j["map_k"] = map.k;
    j["map_allocation"] = map.z;
    j["interaction"] = interaction_json(ip);
    write_file(dir / "summary.json", j.dump(2) + "\n");

    man.wall_clock_utc = utc_now_iso8601();
    man.extra["acceptance"] = acceptance_json(traces);
    write_file(dir / "manifest.json", man.to_json().dump(2) + "\n");

    out.teams = r.teams();
    out.summary = std::move(s);
    out.ok = true;
  } catch (const Error& e) {
    out.error_kind = e.code();
    out.error = e.what();
  }
  return out;
}

RunManifest batch_manifest(const std::string& command,
                           const std::vector<std::string>& files) {
  RunManifest man;
  man.tool_version = BLOCKLEAGUE_VERSION;
  man.command = command;
  for (const std::string& path : files)
    man.inputs.emplace_back(basename_of(path), fnv1a_hex(slurp_file(path)));
  return man;
}

void write_batch_tables(const FitOptions& opt,
                        const std::vector<SeasonOutcome>& outcomes,
                        const std::string& hash) {
  const fs::path dir(opt.out_dir);

  std::ostringstream k_table;
  k_table << "# manifest_hash=" << hash << "\nseason";
  for (int k = 1; k <= opt.prior.k_max; ++k) k_table << ",k" << k;
  k_table << "\n";

  std::ostringstream alloc, roster, sizes;
  alloc << "# manifest_hash=" << hash << "\nseason,team,marginal\n";
  roster << "# manifest_hash=" << hash << "\nseason,team,marginal\n";
  sizes << "# manifest_hash=" << hash << "\nseason,top_block_size\n";

  for (const SeasonOutcome& o : outcomes) {
    if (!o.ok) continue;
    k_table << o.id;
    for (double p : o.summary.k_probs) k_table << "," << percent_2dp(p);
    k_table << "\n";

    for (std::size_t i = 0; i < o.teams.size(); ++i)
      alloc << o.id << "," << o.teams[i] << ","
            << full_precision(o.summary.top_block_marginal[i]) << "\n";

    // Roster rows in descending marginal (ties by team order).
    std::vector<int> members = o.summary.top_block_roster;
    std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
      return o.summary.top_block_marginal[a] > o.summary.top_block_marginal[b];
    });
    for (int i : members)
      roster << o.id << "," << o.teams[i] << ","
             << full_precision(o.summary.top_block_marginal[i]) << "\n";

    sizes << o.id << "," << o.summary.top_block_size << "\n";
  }

  write_file(dir / "k_table.csv", k_table.str());
  write_file(dir / "allocations.csv", alloc.str());
  write_file(dir / "roster.csv", roster.str());
  write_file(dir / "top_block_size.csv", sizes.str());
}

}  // namespace

std::vector<std::string> discover_seasons(const std::string& dir) {
  if (!fs::is_directory(dir))
    throw InvalidInputError("not a directory: " + dir);
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".csv")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) {
    return fs::path(a).filename().string() < fs::path(b).filename().string();
  });
  if (files.empty()) throw InvalidInputError("no .csv files in " + dir);
  return files;
}

std::string season_id_from_path(const std::string& path) {
  return fs::path(path).stem().string();
}

int run_fit(const FitOptions& opt) {
  opt.sampler.validate();
  opt.prior.validate();
  if (opt.chains < 1) throw InvalidConfigError("chains must be >= 1");
  if (opt.jobs < 1) throw InvalidConfigError("jobs must be >= 1");
  if (!(opt.threshold >= 0.0 && opt.threshold <= 1.0))
    throw InvalidConfigError("threshold must lie in [0, 1]");

  fs::create_directories(opt.out_dir);

  std::vector<SeasonOutcome> outcomes(opt.season_files.size());
  std::atomic<std::size_t> next{0};
  const std::size_t workers = std::min<std::size_t>(
      static_cast<std::size_t>(opt.jobs), opt.season_files.size());
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < opt.season_files.size();)
      outcomes[i] = fit_one(opt.season_files[i], opt);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  bool any_failed = false;
  for (const SeasonOutcome& o : outcomes) {
    if (o.ok) {
      int mode_k = 1;
      for (std::size_t k = 1; k < o.summary.k_probs.size(); ++k)
        if (o.summary.k_probs[k] > o.summary.k_probs[mode_k - 1])
          mode_k = static_cast<int>(k) + 1;
      std::cout << "season " << o.id << ": n=" << o.teams.size()
                << ", argmax K=" << mode_k << ", pi(K=" << mode_k
                << ")=" << percent_2dp(o.summary.k_probs[mode_k - 1])
                << "%, top-block size " << o.summary.top_block_size << "\n";
    } else {
      any_failed = true;
      std::cerr << "season " << o.id << ": FAILED (" << o.error_kind
                << "): " << o.error << "\n";
    }
  }

  RunManifest batch = batch_manifest("fit", opt.season_files);
  append_model_settings(batch, opt.prior);
  append_sampler_settings(batch, opt.sampler, opt.chains);
  batch.settings.emplace_back("threshold", full_precision(opt.threshold));
  const std::string hash = batch.hash();
  write_batch_tables(opt, outcomes, hash);
  batch.wall_clock_utc = utc_now_iso8601();
  nlohmann::ordered_json status = nlohmann::ordered_json::array();
  for (const SeasonOutcome& o : outcomes) {
    nlohmann::ordered_json row;
    row["season"] = o.id;
    row["ok"] = o.ok;
    if (!o.ok) row["error"] = o.error;
    status.push_back(row);
  }
  batch.extra["seasons"] = status;
  write_file(fs::path(opt.out_dir) / "manifest.json",
             batch.to_json().dump(2) + "\n");

  return any_failed ? 1 : 0;
}

int run_indices(const IndicesOptions& opt) {
  fs::create_directories(opt.out_dir);

  RunManifest man = batch_manifest("indices", opt.season_files);
  man.settings.emplace_back("points_per_win",
                            std::to_string(opt.points_per_win));
  const std::string hash = man.hash();

  struct Row {
    IndexReport report;
    std::optional<double> pi_k1;
  };
  std::vector<Row> rows;
  bool any_failed = false;
  bool any_summary_missing = false;

  for (const std::string& path : opt.season_files) {
    const std::string id = season_id_from_path(path);
    try {
      ResultsMatrix r = parse_match_csv(slurp_file(path));
      PointsTable pt = points_table(r, opt.points_per_win);
      Row row;
      row.report.season = id;
      row.report.hhicb = hhicb(pt);
      row.report.relative_entropy =
          relative_entropy(pt, &row.report.zero_share_flagged);
      if (!opt.summaries_dir.empty()) {
        const fs::path summary_path =
            fs::path(opt.summaries_dir) / id / "summary.json";
        if (fs::is_regular_file(summary_path)) {
          const nlohmann::json j =
              nlohmann::json::parse(slurp_file(summary_path.string()));
          row.pi_k1 = j.at("k_probs").at(0).get<double>();
        } else {
          any_summary_missing = true;
          std::cerr << "warning: no summary for season " << id << " under "
                    << opt.summaries_dir << "; overlay row omitted\n";
        }
      }
      if (row.report.zero_share_flagged)
        std::cerr << "warning: season " << id
                  << " has a zero points share; 0*log(0) treated as 0\n";
      std::cout << "season " << id
                << ": hhicb=" << full_precision(row.report.hhicb)
                << ", relative_entropy="
                << full_precision(row.report.relative_entropy) << "\n";
      rows.push_back(std::move(row));
    } catch (const Error& e) {
      any_failed = true;
      std::cerr << "season " << id << ": FAILED (" << e.code()
                << "): " << e.what() << "\n";
    }
  }

  std::ostringstream csv;
  csv << "# manifest_hash=" << hash
      << "\nseason,hhicb,relative_entropy,zero_share_flagged\n";
  for (const Row& row : rows)
    csv << row.report.season << "," << full_precision(row.report.hhicb) << ","
        << full_precision(row.report.relative_entropy) << ","
        << (row.report.zero_share_flagged ? 1 : 0) << "\n";
  write_file(fs::path(opt.out_dir) / "indices.csv", csv.str());

  if (!opt.summaries_dir.empty()) {
    std::vector<IndexReport> matched;
    std::vector<double> k1;
    for (const Row& row : rows)
      if (row.pi_k1) {
        matched.push_back(row.report);
        k1.push_back(*row.pi_k1);
      }
    if (matched.empty()) {
      std::cerr << "warning: no summaries found; overlay omitted\n";
    } else {
      IndexPosteriorReport overlay = index_vs_posterior(matched, k1);
      std::ostringstream o;
      o << "# manifest_hash=" << hash << "\nseason,hhicb,relative_entropy,pi_k1\n";
      for (const IndexPosteriorRow& row : overlay.rows)
        o << row.season << "," << full_precision(row.hhicb) << ","
          << full_precision(row.relative_entropy) << ","
          << full_precision(row.pi_k1) << "\n";
      o << "# rho_hhicb_k1="
        << (overlay.rho_hhicb_k1 ? full_precision(*overlay.rho_hhicb_k1)
                                 : std::string("undefined"))
        << "\n";
      o << "# rho_entropy_k1="
        << (overlay.rho_entropy_k1 ? full_precision(*overlay.rho_entropy_k1)
                                   : std::string("undefined"))
        << "\n";
      write_file(fs::path(opt.out_dir) / "overlay.csv", o.str());
    }
  }

  man.wall_clock_utc = utc_now_iso8601();
  if (any_summary_missing) man.extra["overlay_incomplete"] = true;
  write_file(fs::path(opt.out_dir) / "indices_manifest.json",
             man.to_json().dump(2) + "\n");
  return any_failed ? 1 : 0;
}

int run_simulate(const SimulateOptions& opt) {
  if (opt.block_sizes.empty())
    throw InvalidConfigError("--sizes is required (e.g. --sizes 10,10)");
  if (opt.edge && !opt.p_spec.empty())
    throw InvalidConfigError("give either --edge or --p, not both");
  if (!opt.edge && opt.p_spec.empty())
    throw InvalidConfigError("one of --edge or --p is required");
  if (opt.edge && opt.block_sizes.size() != 2)
    throw InvalidConfigError("--edge requires exactly two block sizes");

  const int k = static_cast<int>(opt.block_sizes.size());
  std::vector<std::array<double, 3>> p;
  if (!opt.p_spec.empty()) {
    std::istringstream rows(opt.p_spec);
    std::string row;
    while (std::getline(rows, row, ';')) {
      std::istringstream cells(row);
      std::string cell;
      std::array<double, 3> entry{};
      int w = 0;
      while (std::getline(cells, cell, ',')) {
        if (w >= 3)
          throw InvalidConfigError("--p rows need exactly 3 probabilities");
        try {
          entry[w++] = std::stod(cell);
        } catch (const std::exception&) {
          throw InvalidConfigError("--p: cannot parse '" + cell + "'");
        }
      }
      if (w != 3)
        throw InvalidConfigError("--p rows need exactly 3 probabilities");
      p.push_back(entry);
    }
    if (static_cast<int>(p.size()) != k * k)
      throw InvalidConfigError("--p needs K*K=" + std::to_string(k * k) +
                               " rows, got " + std::to_string(p.size()));
  }

  RunManifest man;
  man.tool_version = BLOCKLEAGUE_VERSION;
  man.command = "simulate";
  {
    std::ostringstream sizes;
    for (std::size_t i = 0; i < opt.block_sizes.size(); ++i)
      sizes << (i ? "," : "") << opt.block_sizes[i];
    man.settings.emplace_back("sizes", sizes.str());
  }
  if (opt.edge) man.settings.emplace_back("edge", full_precision(*opt.edge));
  if (!opt.p_spec.empty()) man.settings.emplace_back("p", opt.p_spec);
  man.settings.emplace_back("seed", std::to_string(opt.seed));
  const std::string hash = man.hash();

  Rng rng(opt.seed);
  SimulationTruth truth;
  ResultsMatrix r = opt.edge
                        ? simulate_two_block(opt.block_sizes[0],
                                             opt.block_sizes[1], *opt.edge,
                                             rng, &truth)
                        : simulate_season(opt.block_sizes, p, rng, &truth);

  fs::create_directories(opt.out_dir);
  std::ostringstream csv;
  csv << "# manifest_hash=" << hash << "\n# teams: ";
  for (std::size_t i = 0; i < r.teams().size(); ++i)
    csv << (i ? "," : "") << r.teams()[i];
  csv << "\n" << write_match_csv(r);
  write_file(fs::path(opt.out_dir) / (opt.name + ".csv"), csv.str());

  nlohmann::ordered_json truth_json;
  truth_json["manifest_hash"] = hash;
  truth_json["seed"] = opt.seed;
  truth_json["k"] = truth.k;
  truth_json["block_sizes"] = opt.block_sizes;
  truth_json["teams"] = r.teams();
  truth_json["z"] = truth.z;
  truth_json["p"] = truth.p;
  write_file(fs::path(opt.out_dir) / (opt.name + "_truth.json"),
             truth_json.dump(2) + "\n");

  man.wall_clock_utc = utc_now_iso8601();
  write_file(fs::path(opt.out_dir) / (opt.name + "_manifest.json"),
             man.to_json().dump(2) + "\n");

  const int n = r.team_count();
  std::cout << "simulated " << n << " teams, " << n * (n - 1)
            << " fixtures -> " << (fs::path(opt.out_dir) / (opt.name + ".csv")).string()
            << "\n";
  return 0;
}

int run_oracle(const OracleOptions& opt) {
  opt.prior.validate();
  const std::string bytes = slurp_file(opt.season_file);
  ResultsMatrix r = parse_match_csv(bytes);
  const std::string id = season_id_from_path(opt.season_file);

  RunManifest man;
  man.tool_version = BLOCKLEAGUE_VERSION;
  man.command = "oracle";
  man.inputs.emplace_back(basename_of(opt.season_file), fnv1a_hex(bytes));
  append_model_settings(man, opt.prior);
  man.settings.emplace_back("budget", full_precision(opt.budget));
  const std::string hash = man.hash();

  PosteriorSummary s = exact_posterior_oracle(r, opt.prior, opt.budget);

  nlohmann::ordered_json j = summary_json(s, r.teams(), id, hash);
  j["method"] = "exact_enumeration";

  if (!opt.compare_summary.empty()) {
    const nlohmann::json other =
        nlohmann::json::parse(slurp_file(opt.compare_summary));
    const std::vector<double> other_k =
        other.at("k_probs").get<std::vector<double>>();
    const std::vector<double> other_marg =
        other.at("top_block_marginal").get<std::vector<double>>();
    double tv = 0.0;
    const std::size_t span = std::max(other_k.size(), s.k_probs.size());
    for (std::size_t i = 0; i < span; ++i) {
      const double a = i < s.k_probs.size() ? s.k_probs[i] : 0.0;
      const double b = i < other_k.size() ? other_k[i] : 0.0;
      tv += std::abs(a - b);
    }
    tv /= 2.0;
    if (other_marg.size() != s.top_block_marginal.size())
      throw InvalidInputError("compared summary has a different team count");
    double max_marg = 0.0;
    for (std::size_t i = 0; i < other_marg.size(); ++i)
      max_marg = std::max(max_marg,
                          std::abs(other_marg[i] - s.top_block_marginal[i]));
    nlohmann::ordered_json cmp;
    cmp["against"] = basename_of(opt.compare_summary);
    cmp["tv_k_probs"] = tv;
    cmp["max_marginal_abs_diff"] = max_marg;
    j["comparison"] = cmp;
    std::cout << "comparison: TV(k_probs)=" << full_precision(tv)
              << ", max |marginal diff|=" << full_precision(max_marg) << "\n";
  }

  fs::create_directories(opt.out_dir);
  write_file(fs::path(opt.out_dir) / "oracle_summary.json", j.dump(2) + "\n");
  man.wall_clock_utc = utc_now_iso8601();
  write_file(fs::path(opt.out_dir) / "oracle_manifest.json",
             man.to_json().dump(2) + "\n");
  std::cout << "season " << id << ": exact posterior over k_max="
            << opt.prior.k_max << " written\n";
  return 0;
}

int run_summarize(const SummarizeOptions& opt) {
  const std::string trace_bytes = slurp_file(opt.trace_file);
  const std::string season_bytes = slurp_file(opt.season_file);
  Trace trace = parse_trace(trace_bytes);
  ResultsMatrix r = parse_match_csv(season_bytes);
  if (trace.n != r.team_count())
    throw InvalidInputError("trace has n=" + std::to_string(trace.n) +
                            " but season has " +
                            std::to_string(r.team_count()) + " teams");
  const std::string id = season_id_from_path(opt.season_file);

  RunManifest man;
  man.tool_version = BLOCKLEAGUE_VERSION;
  man.command = "summarize";
  man.inputs.emplace_back(basename_of(opt.trace_file), fnv1a_hex(trace_bytes));
  man.inputs.emplace_back(basename_of(opt.season_file),
                          fnv1a_hex(season_bytes));
  man.settings.emplace_back("k_max", std::to_string(opt.k_max));
  man.settings.emplace_back("threshold", full_precision(opt.threshold));
  man.settings.emplace_back("beta", beta_string(opt.beta));
  const std::string hash = man.hash();

  RelabeledTrace relabeled = relabel_trace(trace);
  apply_strongest_identification(relabeled, r);
  PosteriorSummary s = summarize(relabeled, opt.k_max, opt.threshold);
  const MapAllocation map = map_allocation(relabeled, s);
  InteractionPosterior ip =
      interaction_posterior(r, BlockState{map.z, map.k}, opt.beta);

  nlohmann::ordered_json j = summary_json(s, r.teams(), id, hash);
  j["map_k"] = map.k;
  j["map_allocation"] = map.z;
  j["interaction"] = interaction_json(ip);

  fs::create_directories(opt.out_dir);
  write_file(fs::path(opt.out_dir) / "summary.json", j.dump(2) + "\n");
  man.wall_clock_utc = utc_now_iso8601();
  write_file(fs::path(opt.out_dir) / "summarize_manifest.json",
             man.to_json().dump(2) + "\n");
  std::cout << "season " << id << ": summarized " << trace.samples.size()
            << " samples, top-block size " << s.top_block_size << "\n";
  return 0;
}

}  // namespace blockleague::cli
