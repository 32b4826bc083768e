#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "blockleague/league_data.hpp"
#include "blockleague/model.hpp"
#include "blockleague/relabel.hpp"

namespace blockleague {

// Posterior readouts assembled from a relabelled, strength-ordered trace
// (or from exact enumeration).
struct PosteriorSummary {
  // k_probs[k-1] = pi(K = k | y) for k = 1..k_max (trailing zeros kept).
  // K counts the non-empty blocks of a state: sampler states padded with
  // unused labels describe the same partition of the teams and are binned
  // together with it.
  std::vector<double> k_probs;
  // alloc_probs_given_k[k] = N x k matrix: P(z_i = block | y, K = k) for
  // the K values that actually occur (positive posterior mass).
  std::map<int, std::vector<std::vector<double>>> alloc_probs_given_k;
  // Marginal probability that team i belongs to the strongest block,
  // averaged over K: sum_k P(z_i = 1 | y, K = k) * pi(K = k | y).
  std::vector<double> top_block_marginal;
  // Teams whose marginal exceeds the roster threshold.
  std::vector<int> top_block_roster;  // 0-based team indices, ascending
  int top_block_size = 0;
  double threshold = 0.5;
};

// Ranks blocks by inter-block dominance and returns the permutation that
// sends the strongest block to label 1, the next to 2, and so on.
//
// Dominance score of block a: wins against other blocks (home wins as home
// block plus home losses as away block) plus half of draws, divided by the
// number of inter-block games involving a.  Order: non-empty blocks first,
// score descending; ties by within-block home wins descending, then by the
// block's smallest member index ascending (a label-free key, so permuting
// input labels permutes the output compositionally and the relabelled
// sample is unchanged); empty blocks keep ascending label order.
Permutation identify_strongest(const BlockState& s,
                               const SufficientStats& stats);

// Applies identify_strongest to every sample of a relabelled trace so that
// label 1 always denotes the strongest block.  O(S * N^2).
void apply_strongest_identification(RelabeledTrace& trace,
                                    const ResultsMatrix& r);

// Empirical summary of a relabelled, strength-ordered trace.  k_probs are
// sample frequencies of the number of non-empty blocks; marginals follow
// the mixture decomposition above.
// Throws InvalidInput on an empty trace or a threshold outside [0, 1].
PosteriorSummary summarize(const RelabeledTrace& trace, int k_max,
                           double threshold = 0.5);

// Conditional posterior of the outcome probabilities p^{ab} given (z, K):
// per ordered block pair, a Dirichlet with parameters N_ab^w + beta_w.
struct InteractionCell {
  int home_block = 0, away_block = 0;      // 1-based labels
  std::array<double, 3> dirichlet = {};    // posterior concentrations
  std::array<double, 3> mean = {};
  std::array<double, 3> sd = {};
  std::array<double, 3> q025 = {};
  std::array<double, 3> q975 = {};
};

struct InteractionPosterior {
  int k = 0;
  std::vector<InteractionCell> cells;  // row-major over (home, away)
};

// Analytic Dirichlet summaries for every ordered block pair under
// allocation z with K = k.  Quantiles come from each component's
// Beta(a_w, a_tot - a_w) marginal, inverted by bisection to 1e-10.
InteractionPosterior interaction_posterior(const ResultsMatrix& r,
                                           const BlockState& s,
                                           const std::array<double, 3>& beta);

// Regularized incomplete beta function I_x(a, b) and the corresponding
// quantile (inverse CDF of Beta(a, b)); exposed for tests.
double beta_cdf(double a, double b, double x);
double beta_quantile(double a, double b, double p);

// Exact posterior by brute-force enumeration of every allocation vector
// z in {1..K}^N for K = 1..k_max.  Strongest-block identification is
// applied per state and mass is binned by non-empty block count, so every
// field is directly comparable to summarize().
// Throws TooLarge when k_max^N exceeds `budget` states.
PosteriorSummary exact_posterior_oracle(const ResultsMatrix& r,
                                        const PriorConfig& prior,
                                        double budget = 1e7);

// Roster cardinality per season, in input order.
std::vector<int> top_block_size_series(
    const std::vector<PosteriorSummary>& summaries);

}  // namespace blockleague
