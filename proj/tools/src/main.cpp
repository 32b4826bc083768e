#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blockleague/errors.hpp"
#include "pipeline.hpp"

namespace {

using namespace blockleague;

KPrior prior_from_name(const std::string& name) {
  return name == "uniform" ? KPrior::kUniform : KPrior::kTruncatedPoisson1;
}

// --season (repeatable) plus --dir, combined in a stable order.
std::vector<std::string> resolve_seasons(const std::vector<std::string>& files,
                                         const std::string& dir) {
  std::vector<std::string> all = files;
  if (!dir.empty())
    for (std::string& found : cli::discover_seasons(dir))
      all.push_back(std::move(found));
  if (all.empty())
    throw InvalidInputError("no input seasons: pass --season or --dir");
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Competitive-balance inference for round-robin leagues"};
  app.set_version_flag("--version", BLOCKLEAGUE_VERSION);
  app.require_subcommand(1);

  // ---- fit ----------------------------------------------------------------
  auto* fit = app.add_subcommand(
      "fit", "Sample the block posterior for one or more seasons");
  std::vector<std::string> fit_seasons;
  std::string fit_dir;
  cli::FitOptions fit_opt;
  std::string fit_prior = "poisson";
  fit->add_option("--season", fit_seasons, "season CSV file (repeatable)");
  fit->add_option("--dir", fit_dir, "directory of season CSV files");
  fit->add_option("--out", fit_opt.out_dir, "output directory")
      ->capture_default_str();
  fit->add_option("--iters", fit_opt.sampler.iterations, "MCMC iterations")
      ->capture_default_str();
  fit->add_option("--burn-in", fit_opt.sampler.burn_in, "burn-in iterations")
      ->capture_default_str();
  fit->add_option("--thin", fit_opt.sampler.thinning, "thinning interval")
      ->capture_default_str();
  fit->add_option("--seed", fit_opt.sampler.rng_seed, "RNG seed")
      ->envname("BLOCK_LEAGUE_SEED")
      ->capture_default_str();
  fit->add_option("--k-max", fit_opt.prior.k_max, "largest block count")
      ->capture_default_str();
  fit->add_option("--prior", fit_prior, "prior on K")
      ->check(CLI::IsMember({"poisson", "uniform"}))
      ->capture_default_str();
  fit->add_option("--chains", fit_opt.chains,
                  "independent chains pooled per season")
      ->capture_default_str();
  fit->add_option("--jobs", fit_opt.jobs, "seasons processed in parallel")
      ->capture_default_str();
  fit->add_option("--threshold", fit_opt.threshold,
                  "top-block roster membership threshold")
      ->capture_default_str();

  // ---- indices --------------------------------------------------------------
  auto* indices = app.add_subcommand(
      "indices", "Classical balance indices per season");
  std::vector<std::string> idx_seasons;
  std::string idx_dir;
  cli::IndicesOptions idx_opt;
  indices->add_option("--season", idx_seasons, "season CSV file (repeatable)");
  indices->add_option("--dir", idx_dir, "directory of season CSV files");
  indices->add_option("--out", idx_opt.out_dir, "output directory")
      ->capture_default_str();
  indices
      ->add_option("--points-scheme", idx_opt.points_per_win,
                   "points per win (2 or 3)")
      ->check(CLI::IsMember({2, 3}))
      ->capture_default_str();
  indices->add_option("--summaries", idx_opt.summaries_dir,
                      "fit output directory for the pi(K=1|y) overlay");

  // ---- simulate -------------------------------------------------------------
  auto* simulate = app.add_subcommand(
      "simulate", "Draw a synthetic season from a planted block structure");
  cli::SimulateOptions sim_opt;
  double sim_edge = -1.0;
  simulate
      ->add_option("--sizes", sim_opt.block_sizes,
                   "block sizes, e.g. --sizes 10,10")
      ->delimiter(',')
      ->required();
  auto* edge_opt = simulate->add_option(
      "--edge", sim_edge,
      "two-block separation: first-block win probability in cross games");
  simulate->add_option(
      "--p", sim_opt.p_spec,
      "explicit K*K outcome rows 'w,d,l;w,d,l;...' in row-major block order");
  simulate->add_option("--seed", sim_opt.seed, "RNG seed")
      ->envname("BLOCK_LEAGUE_SEED")
      ->capture_default_str();
  simulate->add_option("--out", sim_opt.out_dir, "output directory")
      ->capture_default_str();
  simulate->add_option("--name", sim_opt.name, "output basename")
      ->capture_default_str();

  // ---- oracle ---------------------------------------------------------------
  auto* oracle = app.add_subcommand(
      "oracle", "Exact posterior by enumeration (small seasons only)");
  cli::OracleOptions ora_opt;
  std::string ora_prior = "poisson";
  ora_opt.prior.k_max = 3;
  oracle->add_option("--season", ora_opt.season_file, "season CSV file")
      ->required();
  oracle->add_option("--out", ora_opt.out_dir, "output directory")
      ->capture_default_str();
  oracle->add_option("--k-max", ora_opt.prior.k_max, "largest block count")
      ->capture_default_str();
  oracle->add_option("--prior", ora_prior, "prior on K")
      ->check(CLI::IsMember({"poisson", "uniform"}))
      ->capture_default_str();
  oracle->add_option("--budget", ora_opt.budget,
                     "largest allowed state count k_max^N")
      ->capture_default_str();
  oracle->add_option("--compare", ora_opt.compare_summary,
                     "fit summary.json to compare against");

  // ---- summarize ------------------------------------------------------------
  auto* summarize = app.add_subcommand(
      "summarize", "Recompute the posterior summary from a stored trace");
  cli::SummarizeOptions sum_opt;
  summarize->add_option("--trace", sum_opt.trace_file, "trace CSV file")
      ->required();
  summarize->add_option("--season", sum_opt.season_file, "season CSV file")
      ->required();
  summarize->add_option("--out", sum_opt.out_dir, "output directory")
      ->capture_default_str();
  summarize->add_option("--k-max", sum_opt.k_max, "largest block count")
      ->capture_default_str();
  summarize
      ->add_option("--threshold", sum_opt.threshold,
                   "top-block roster membership threshold")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // stable contract: input errors exit 1
  }

  try {
    if (fit->parsed()) {
      fit_opt.season_files = resolve_seasons(fit_seasons, fit_dir);
      fit_opt.prior.k_prior = prior_from_name(fit_prior);
      return cli::run_fit(fit_opt);
    }
    if (indices->parsed()) {
      idx_opt.season_files = resolve_seasons(idx_seasons, idx_dir);
      return cli::run_indices(idx_opt);
    }
    if (simulate->parsed()) {
      if (edge_opt->count() > 0) sim_opt.edge = sim_edge;
      return cli::run_simulate(sim_opt);
    }
    if (oracle->parsed()) {
      ora_opt.prior.k_prior = prior_from_name(ora_prior);
      return cli::run_oracle(ora_opt);
    }
    if (summarize->parsed()) return cli::run_summarize(sum_opt);
  } catch (const TooLargeError& e) {
    std::cerr << "error (TooLarge): " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error (" << e.code() << "): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
