// End-to-end tests driving the installed command-line binary.  The binary
// path arrives via BLOCKLEAGUE_CLI_PATH (set by the build).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
#ifdef BLOCKLEAGUE_CLI_PATH
  return BLOCKLEAGUE_CLI_PATH;
#else
  const char* env = std::getenv("BLOCKLEAGUE_CLI_PATH");
  REQUIRE(env != nullptr);
  return env;
#endif
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file: ", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs `<cli> args` with stdout/stderr captured to files in `dir`.
RunResult run(const fs::path& dir, const std::string& args,
              const std::string& env_prefix = "") {
  fs::create_directories(dir);
  const fs::path out_file = dir / "_stdout.txt";
  const fs::path err_file = dir / "_stderr.txt";
  std::string cmd = env_prefix + "\"" + cli_path() + "\" " + args + " > \"" +
                    out_file.string() + "\" 2> \"" + err_file.string() + "\"";
  const int raw = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::path("cli_scratch") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

// Writes a deterministic synthetic season and returns its path.
fs::path make_season(const fs::path& dir, const std::string& name, int n1,
                     int n2, double edge, int seed) {
  std::ostringstream args;
  args << "simulate --sizes " << n1 << "," << n2 << " --edge " << edge
       << " --seed " << seed << " --out " << q(dir) << " --name " << name;
  RunResult r = run(dir, args.str());
  REQUIRE(r.exit_code == 0);
  return dir / (name + ".csv");
}

}  // namespace

TEST_CASE("--version reports the tool version") {
  const fs::path dir = fresh_dir("version");
  RunResult r = run(dir, "--version");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("1.0") != std::string::npos);
}

TEST_CASE("no subcommand is an input error") {
  const fs::path dir = fresh_dir("nosub");
  CHECK(run(dir, "").exit_code == 1);
}

TEST_CASE("simulate is deterministic in the seed") {
  const fs::path dir = fresh_dir("simulate");
  make_season(dir / "a", "synthetic", 3, 3, 0.9, 42);
  make_season(dir / "b", "synthetic", 3, 3, 0.9, 42);
  make_season(dir / "c", "synthetic", 3, 3, 0.9, 43);
  CHECK(slurp(dir / "a/synthetic.csv") == slurp(dir / "b/synthetic.csv"));
  CHECK(slurp(dir / "a/synthetic_truth.json") ==
        slurp(dir / "b/synthetic_truth.json"));
  CHECK(slurp(dir / "a/synthetic.csv") != slurp(dir / "c/synthetic.csv"));
}

TEST_CASE("simulate rejects inconsistent options") {
  const fs::path dir = fresh_dir("simulate_bad");
  CHECK(run(dir, "simulate --sizes 3,3 --out " + q(dir)).exit_code == 1);
  CHECK(run(dir, "simulate --sizes 3,3 --edge 0.5 --p 1,0,0 --out " + q(dir))
            .exit_code == 1);
  CHECK(run(dir, "simulate --sizes 3,3,3 --edge 0.5 --out " + q(dir))
            .exit_code == 1);
  CHECK(run(dir, "simulate --sizes 3,3 --p 0.5,0.5 --out " + q(dir))
            .exit_code == 1);
}

TEST_CASE("fit reruns are byte-identical and embed the manifest hash") {
  const fs::path dir = fresh_dir("fit_determinism");
  const fs::path season = make_season(dir, "s1", 3, 3, 0.95, 7);

  const std::string fit_args = "fit --season " + q(season) +
                               " --iters 20000 --burn-in 4000 --seed 11"
                               " --k-max 3 --out ";
  REQUIRE(run(dir, fit_args + q(dir / "run1")).exit_code == 0);
  REQUIRE(run(dir, fit_args + q(dir / "run2")).exit_code == 0);

  const std::string trace1 = slurp(dir / "run1/s1/trace.csv");
  CHECK(trace1 == slurp(dir / "run2/s1/trace.csv"));
  const std::string summary1 = slurp(dir / "run1/s1/summary.json");
  CHECK(summary1 == slurp(dir / "run2/s1/summary.json"));
  CHECK(slurp(dir / "run1/k_table.csv") == slurp(dir / "run2/k_table.csv"));

  // The same manifest hash is stamped into every output of the run.
  const auto j = nlohmann::json::parse(summary1);
  const std::string hash = j.at("manifest_hash").get<std::string>();
  CHECK(hash.size() == 16);
  CHECK(trace1.find("# manifest_hash=" + hash) != std::string::npos);
  const auto manifest =
      nlohmann::json::parse(slurp(dir / "run1/s1/manifest.json"));
  CHECK(manifest.at("manifest_hash").get<std::string>() == hash);

  // A different seed changes the outputs and the hash.
  REQUIRE(run(dir,
              "fit --season " + q(season) +
                  " --iters 20000 --burn-in 4000 --seed 12 --k-max 3 --out " +
                  q(dir / "run3"))
              .exit_code == 0);
  CHECK(slurp(dir / "run3/s1/summary.json") != summary1);
}

TEST_CASE("the seed falls back to BLOCK_LEAGUE_SEED") {
  const fs::path dir = fresh_dir("env_seed");
  const fs::path season = make_season(dir, "s1", 3, 2, 0.9, 3);
  const std::string base = "fit --season " + q(season) +
                           " --iters 5000 --burn-in 1000 --k-max 3 --out ";
  REQUIRE(run(dir, base + q(dir / "env"), "BLOCK_LEAGUE_SEED=123 ").exit_code ==
          0);
  REQUIRE(run(dir, base + q(dir / "flag") + " --seed 123").exit_code == 0);
  CHECK(slurp(dir / "env/s1/summary.json") ==
        slurp(dir / "flag/s1/summary.json"));
}

TEST_CASE("batch fits are unaffected by the job count") {
  const fs::path dir = fresh_dir("jobs");
  const fs::path seasons = dir / "seasons";
  make_season(seasons, "alpha", 3, 3, 0.9, 1);
  make_season(seasons, "beta", 4, 2, 0.85, 2);
  make_season(seasons, "gamma", 2, 4, 0.8, 3);

  const std::string base = "fit --dir " + q(seasons) +
                           " --iters 8000 --burn-in 2000 --seed 5 --k-max 3"
                           " --jobs ";
  REQUIRE(run(dir, base + "1 --out " + q(dir / "serial")).exit_code == 0);
  REQUIRE(run(dir, base + "3 --out " + q(dir / "parallel")).exit_code == 0);
  for (const std::string id : {"alpha", "beta", "gamma"}) {
    CHECK(slurp(dir / "serial" / id / "summary.json") ==
          slurp(dir / "parallel" / id / "summary.json"));
    CHECK(slurp(dir / "serial" / id / "trace.csv") ==
          slurp(dir / "parallel" / id / "trace.csv"));
  }
  CHECK(slurp(dir / "serial/k_table.csv") ==
        slurp(dir / "parallel/k_table.csv"));
  CHECK(slurp(dir / "serial/top_block_size.csv") ==
        slurp(dir / "parallel/top_block_size.csv"));
}

TEST_CASE("a failing season does not abort the batch") {
  const fs::path dir = fresh_dir("partial_failure");
  const fs::path seasons = dir / "seasons";
  make_season(seasons, "good", 3, 3, 0.9, 1);
  {
    std::ofstream bad(seasons / "bad.csv");
    bad << "A,B,H\nB,A,H\nA,B,H\n";  // duplicate fixture
  }
  RunResult r = run(dir, "fit --dir " + q(seasons) +
                             " --iters 4000 --burn-in 1000 --k-max 2 --out " +
                             q(dir / "out"));
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("bad") != std::string::npos);
  CHECK(fs::is_regular_file(dir / "out/good/summary.json"));
  // The failed season is absent from the batch tables.
  CHECK(slurp(dir / "out/k_table.csv").find("bad") == std::string::npos);
}

TEST_CASE("summarize reproduces the fit summary from its trace") {
  const fs::path dir = fresh_dir("summarize");
  const fs::path season = make_season(dir, "s1", 3, 3, 0.9, 9);
  REQUIRE(run(dir,
              "fit --season " + q(season) +
                  " --iters 20000 --burn-in 5000 --seed 2 --k-max 3 --out " +
                  q(dir / "fit"))
              .exit_code == 0);
  REQUIRE(run(dir,
              "summarize --trace " + q(dir / "fit/s1/trace.csv") +
                  " --season " + q(season) + " --k-max 3 --out " +
                  q(dir / "resummary"))
              .exit_code == 0);

  const auto a = nlohmann::json::parse(slurp(dir / "fit/s1/summary.json"));
  const auto b =
      nlohmann::json::parse(slurp(dir / "resummary/summary.json"));
  CHECK(a.at("k_probs") == b.at("k_probs"));
  CHECK(a.at("top_block_marginal") == b.at("top_block_marginal"));
  CHECK(a.at("top_block_roster") == b.at("top_block_roster"));
  CHECK(a.at("map_allocation") == b.at("map_allocation"));
  CHECK(a.at("interaction") == b.at("interaction"));
}

TEST_CASE("oracle agrees with a long fit run and reports the comparison") {
  const fs::path dir = fresh_dir("oracle");
  const fs::path season = make_season(dir, "tiny", 3, 2, 0.95, 4);
  REQUIRE(run(dir,
              "fit --season " + q(season) +
                  " --iters 200000 --burn-in 20000 --seed 6 --k-max 3 --out " +
                  q(dir / "fit"))
              .exit_code == 0);
  RunResult r = run(dir, "oracle --season " + q(season) +
                             " --k-max 3 --compare " +
                             q(dir / "fit/tiny/summary.json") + " --out " +
                             q(dir / "oracle"));
  REQUIRE(r.exit_code == 0);
  const auto j =
      nlohmann::json::parse(slurp(dir / "oracle/oracle_summary.json"));
  CHECK(j.at("method") == "exact_enumeration");
  const double tv = j.at("comparison").at("tv_k_probs").get<double>();
  const double marg =
      j.at("comparison").at("max_marginal_abs_diff").get<double>();
  CHECK(tv < 0.05);
  CHECK(marg < 0.05);
  CHECK(r.out.find("TV(k_probs)") != std::string::npos);
}

TEST_CASE("oracle refuses an oversized season with exit code 2") {
  const fs::path dir = fresh_dir("oracle_budget");
  fs::path season = dir / "big.csv";
  {
    std::ofstream out(season);
    for (int i = 0; i < 22; ++i)
      for (int j = 0; j < 22; ++j)
        if (i != j) out << "T" << i << ",T" << j << ",D\n";
  }
  RunResult r = run(dir, "oracle --season " + q(season) + " --k-max 20 --out " +
                             q(dir / "out"));
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("TooLarge") != std::string::npos);
}

TEST_CASE("indices produce exact values for an all-draw season") {
  const fs::path dir = fresh_dir("indices");
  REQUIRE(run(dir, "simulate --sizes 4 --p 0,1,0 --seed 1 --out " + q(dir) +
                       " --name draws")
              .exit_code == 0);
  RunResult r = run(dir, "indices --season " + q(dir / "draws.csv") +
                             " --out " + q(dir / "out"));
  REQUIRE(r.exit_code == 0);
  const std::string csv = slurp(dir / "out/indices.csv");
  CHECK(csv.find("draws,1,1,0") != std::string::npos);
}

TEST_CASE("indices join fit summaries into an overlay") {
  const fs::path dir = fresh_dir("overlay");
  const fs::path seasons = dir / "seasons";
  make_season(seasons, "one", 3, 3, 0.95, 1);
  make_season(seasons, "two", 3, 3, 0.6, 2);
  REQUIRE(run(dir,
              "fit --dir " + q(seasons) +
                  " --iters 6000 --burn-in 1500 --seed 3 --k-max 3 --out " +
                  q(dir / "fit"))
              .exit_code == 0);
  RunResult r = run(dir, "indices --dir " + q(seasons) + " --summaries " +
                             q(dir / "fit") + " --out " + q(dir / "out"));
  REQUIRE(r.exit_code == 0);
  const std::string overlay = slurp(dir / "out/overlay.csv");
  CHECK(overlay.find("season,hhicb,relative_entropy,pi_k1") !=
        std::string::npos);
  CHECK(overlay.find("one,") != std::string::npos);
  CHECK(overlay.find("two,") != std::string::npos);
  CHECK(overlay.find("# rho_hhicb_k1=") != std::string::npos);

  // Without summaries the overlay is skipped with a warning.
  RunResult r2 = run(dir, "indices --dir " + q(seasons) + " --summaries " +
                              q(dir / "missing") + " --out " + q(dir / "out2"));
  CHECK(r2.exit_code == 0);
  CHECK_FALSE(fs::exists(dir / "out2/overlay.csv"));
  CHECK(r2.err.find("warning") != std::string::npos);
}

TEST_CASE("input errors exit with code 1") {
  const fs::path dir = fresh_dir("errors");
  CHECK(run(dir, "fit --season no_such_file.csv --out " + q(dir)).exit_code ==
        1);
  fs::path bad = dir / "bad.csv";
  {
    std::ofstream out(bad);
    out << "A,B,H\nB,A,X\n";
  }
  RunResult r = run(dir, "indices --season " + q(bad) + " --out " + q(dir));
  CHECK(r.exit_code == 1);
  CHECK(run(dir, "fit --dir " + q(dir / "empty_dir") + " --out " + q(dir))
            .exit_code == 1);
}
