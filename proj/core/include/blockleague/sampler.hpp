#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "blockleague/model.hpp"
#include "blockleague/rng.hpp"

namespace blockleague {

// Configuration of one MCMC run.
struct SamplerConfig {
  std::int64_t iterations = 200000;
  std::int64_t burn_in = 50000;
  std::uint64_t rng_seed = 1;
  std::uint64_t rng_stream = 0;  // chain index; seeds are split per stream
  // Probability of choosing, each iteration: [0] the K-insert/delete move,
  // [1] the single-site reallocation sweep, [2] the absorb/eject move.
  std::array<double, 3> move_probabilities = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  std::int64_t thinning = 1;

  // Throws InvalidConfig unless iterations > 0, 0 <= burn_in < iterations,
  // thinning >= 1, probabilities >= 0 summing to 1 (within 1e-12).
  void validate() const;
};

// Per-move attempt/accept counters.  A "no-op" attempt (e.g. delete at
// K = 1, eject at K = k_max with k_max = 1) counts as an attempt that was
// not accepted.
struct MoveCounters {
  std::int64_t mk_attempts = 0, mk_accepts = 0;
  std::int64_t gs_site_attempts = 0, gs_site_accepts = 0;
  std::int64_t ae_attempts = 0, ae_accepts = 0;
};

// One stored sample.
struct TraceSample {
  std::int64_t iteration = 0;  // 1-based iteration that produced the state
  int k = 1;
  std::vector<int> z;
};

// Post-burn-in, thinned samples plus run metadata.
struct Trace {
  std::vector<TraceSample> samples;
  MoveCounters counters;
  std::uint64_t rng_seed = 0;
  std::uint64_t rng_stream = 0;
  int n = 0;
};

// Mutable sampler state, exposed so that tests and diagnostics can drive the
// chain step by step with exactly the kernel run_sampler uses.
struct SamplerState {
  BlockState state;
  SufficientStats stats;
  Rng rng;
  MoveCounters counters;
};

// K-change Metropolis move: with probability 1/2 propose inserting an empty
// block K+1 (rejected outright at K = k_max), else propose deleting an empty
// block.  Deletion requires the highest-labelled block K itself to be empty
// (interior empty labels are left to the absorb/eject move, which can remove
// them reversibly) and is rejected at K = 1.  The allocation vector z never
// changes.  Returns true iff the proposal was accepted.
bool move_mk(BlockState& state, SufficientStats& stats,
             const PriorConfig& prior, Rng& rng);

// Closed-form log acceptance ratios of the K-change move at default
// hyperparameters: insert K -> K+1 has ratio K/((N+K)(K+1)) under the
// truncated-Poisson prior and K/(N+K) under the uniform prior; delete
// K -> K-1 is the exact reciprocal of insert at K-1 (computed as its
// negation, so insert(k) + delete(k+1) is 0 to the last bit).
double log_mk_insert_alpha(int k, int n, const PriorConfig& prior);
double log_mk_delete_alpha(int k, int n, const PriorConfig& prior);

// Sequential single-site reallocation sweep over i = 1..N at fixed K.  Each
// site proposes a uniform label in {1..K} \ {z_i} (empty labels included)
// and accepts by the collapsed posterior ratio, evaluated incrementally.
// No-op when K = 1.  Returns the number of accepted site moves.
int move_gibbs_sweep(BlockState& state, SufficientStats& stats,
                     const ResultsMatrix& r, const PriorConfig& prior,
                     Rng& rng, MoveCounters* counters = nullptr);

// Absorb/eject move.  With probability p_K^e (1 at K = 1, 0 at K = k_max,
// 1/2 otherwise) propose ejecting: pick a source block uniformly, draw
// p_E ~ U(0,1), move each member independently to a new block K+1 with
// probability p_E, and accept by the collapsed-proposal Metropolis-Hastings
// ratio; on acceptance, swap label K+1 with a uniform label in {1..K+1}.
// Otherwise propose absorbing: pick an ordered pair of distinct blocks,
// merge the second into the first, relabel the vacated label with block K,
// and drop K.  Returns true iff accepted.
bool move_absorb_eject(BlockState& state, SufficientStats& stats,
                       const ResultsMatrix& r, const PriorConfig& prior,
                       Rng& rng);

// One iteration of the sampler kernel: draws the move type from
// cfg.move_probabilities and applies it.  Exposed for diagnostics; the
// trace-recording loop in run_sampler is a thin wrapper over this.
void sampler_step(SamplerState& s, const ResultsMatrix& r,
                  const PriorConfig& prior, const SamplerConfig& cfg);

// Runs the full chain from the deterministic initial state (every team in
// block 1, K = 1), recording each post-burn-in state at the configured
// thinning stride.  Bit-identical traces for identical inputs and seeds.
Trace run_sampler(const ResultsMatrix& r, const PriorConfig& prior,
                  const SamplerConfig& cfg);

// Newline-delimited text serialization of a trace: a comment header, then
// one "iteration,k,z1 z2 ... zN" row per sample.  parse_trace inverts it.
std::string write_trace(const Trace& trace,
                        const std::string& manifest_hash = "");
Trace parse_trace(const std::string& text);

}  // namespace blockleague
