#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "blockleague/model.hpp"

using namespace blockleague;

namespace {

void BM_LogCollapsedPosterior(benchmark::State& state) {
  const int n = 20;
  const int k = static_cast<int>(state.range(0));
  ResultsMatrix r = benchutil::random_season(n, 7);
  Rng rng(13);
  std::vector<int> z(n);
  for (int& zi : z)
    zi = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(k)));
  BlockState s{z, k};
  SufficientStats stats = compute_stats(r, s);
  PriorConfig prior;
  for (auto _ : state)
    benchmark::DoNotOptimize(log_collapsed_posterior(stats, k, prior, n));
}
BENCHMARK(BM_LogCollapsedPosterior)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_ComputeStats(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ResultsMatrix r = benchutil::random_season(n, 29);
  std::vector<int> z(n);
  Rng rng(31);
  for (int& zi : z) zi = 1 + static_cast<int>(rng.uniform_int(4));
  BlockState s{z, 4};
  for (auto _ : state) {
    SufficientStats stats = compute_stats(r, s);
    benchmark::DoNotOptimize(stats.size_of(1));
  }
}
BENCHMARK(BM_ComputeStats)->Arg(6)->Arg(20)->Arg(22);

void BM_MoveTeamDelta(benchmark::State& state) {
  const int n = 20;
  ResultsMatrix r = benchutil::random_season(n, 37);
  std::vector<int> z(n);
  Rng rng(41);
  for (int& zi : z) zi = 1 + static_cast<int>(rng.uniform_int(3));
  BlockState s{z, 3};
  SufficientStats stats = compute_stats(r, s);
  int i = 0;
  for (auto _ : state) {
    const int from = s.z[i];
    const int to = 1 + (from % 3);
    stats.move_team(r, s.z, i, from, to);
    stats.move_team(r, s.z, i, to, from);  // undo keeps the state fixed
    benchmark::DoNotOptimize(stats.size_of(1));
    i = (i + 1) % n;
  }
  state.SetItemsProcessed(2 * state.iterations());
}
BENCHMARK(BM_MoveTeamDelta);

}  // namespace
