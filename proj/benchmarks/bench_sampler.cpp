#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "blockleague/sampler.hpp"

using namespace blockleague;

namespace {

void BM_SamplerIteration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ResultsMatrix r = benchutil::random_season(n, 17);
  PriorConfig prior;
  prior.k_max = 20;
  BlockState init{std::vector<int>(n, 1), 1};
  SamplerState st{init, compute_stats(r, init), Rng(1), MoveCounters{}};
  SamplerConfig cfg;
  for (auto _ : state) {
    sampler_step(st, r, prior, cfg);
    benchmark::DoNotOptimize(st.state.k);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SamplerIteration)->Arg(6)->Arg(20)->Arg(22);

void BM_FullRun(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ResultsMatrix r = benchutil::random_season(n, 23);
  PriorConfig prior;
  SamplerConfig cfg;
  cfg.iterations = 20000;
  cfg.burn_in = 5000;
  cfg.rng_seed = 3;
  for (auto _ : state) {
    Trace t = run_sampler(r, prior, cfg);
    benchmark::DoNotOptimize(t.samples.size());
  }
  state.SetItemsProcessed(state.iterations() * cfg.iterations);
}
BENCHMARK(BM_FullRun)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
