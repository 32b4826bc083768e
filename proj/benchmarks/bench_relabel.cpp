#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "blockleague/relabel.hpp"

using namespace blockleague;

namespace {

Trace synthetic_trace(int n, int k, int samples, std::uint64_t seed) {
  Rng rng(seed);
  Trace t;
  t.n = n;
  for (int s = 0; s < samples; ++s) {
    std::vector<int> z(n);
    for (int& zi : z)
      zi = 1 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(k)));
    t.samples.push_back(TraceSample{s + 1, k, std::move(z)});
  }
  return t;
}

void BM_RelabelTrace(benchmark::State& state) {
  Trace t = synthetic_trace(20, static_cast<int>(state.range(0)), 5000, 5);
  for (auto _ : state) {
    RelabeledTrace out = relabel_trace(t);
    benchmark::DoNotOptimize(out.samples.size());
  }
  state.SetItemsProcessed(state.iterations() * t.samples.size());
}
BENCHMARK(BM_RelabelTrace)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_AssignmentSolver(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  Rng rng(11);
  std::vector<std::vector<std::int64_t>> w(k, std::vector<std::int64_t>(k));
  for (auto& row : w)
    for (auto& cell : row) cell = static_cast<std::int64_t>(rng.uniform_int(1000));
  for (auto _ : state) {
    Permutation sigma = max_weight_assignment(w);
    benchmark::DoNotOptimize(sigma.mapping.data());
  }
}
BENCHMARK(BM_AssignmentSolver)->Arg(4)->Arg(8)->Arg(16);

}  // namespace
