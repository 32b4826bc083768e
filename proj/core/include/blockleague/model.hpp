#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "blockleague/league_data.hpp"

namespace blockleague {

// Prior family for the number of blocks K.
enum class KPrior {
  kTruncatedPoisson1,  // pi(K) proportional to 1/K!, K in {1..k_max}
  kUniform,            // pi(K) constant on {1..k_max}
};

// Hyperparameters of the model: prior on K, truncation k_max, Dirichlet
// concentration gamma0 for the block-weight vector, and a 3-vector beta of
// Dirichlet concentrations for each block-pair outcome distribution.
//
// The fast closed-form evaluation path applies only at the defaults
// gamma0 = 1, beta = (1,1,1); any other value routes through the general
// Beta-function form (same posterior, evaluated without the simplifications).
struct PriorConfig {
  KPrior k_prior = KPrior::kTruncatedPoisson1;
  int k_max = 20;
  double gamma0 = 1.0;
  std::array<double, 3> beta = {1.0, 1.0, 1.0};

  bool default_hyperparameters() const {
    return gamma0 == 1.0 && beta[0] == 1.0 && beta[1] == 1.0 && beta[2] == 1.0;
  }
  // Throws InvalidConfig unless k_max >= 1, gamma0 > 0, all beta > 0.
  void validate() const;
};

// Allocation state: labels z_i in {1..k}.  Empty blocks are allowed; labels
// above k never appear.
struct BlockState {
  std::vector<int> z;  // 1-based labels
  int k = 1;

  int n() const { return static_cast<int>(z.size()); }
  // Throws InvalidState if any label is outside {1..k} or k < 1.
  void validate(int k_max) const;
};

// Outcome counts per ordered block pair and block sizes.
// counts(a, b)[w-1] is the number of games with home team in block a, away
// team in block b, and outcome w; sizes[a-1] is block a's team count.
class SufficientStats {
 public:
  SufficientStats() = default;
  explicit SufficientStats(int k);

  int k() const { return k_; }
  const std::array<std::int64_t, 3>& counts(int a, int b) const {
    return cells_[static_cast<std::size_t>(a - 1) * k_ + (b - 1)];
  }
  std::array<std::int64_t, 3>& counts(int a, int b) {
    return cells_[static_cast<std::size_t>(a - 1) * k_ + (b - 1)];
  }
  std::int64_t size_of(int a) const { return sizes_[a - 1]; }
  const std::vector<std::int64_t>& sizes() const { return sizes_; }
  void add_team_to(int a) { sizes_[a - 1]++; }

  // Structural edits used by the sampler.  All labels are 1-based.
  void add_empty_block();              // k -> k+1
  void remove_last_block();            // requires block k empty (asserted)
  void swap_blocks(int a, int b);      // swap rows, columns and sizes
  void merge_block_into(int dst, int src);  // src's games and teams join dst

  // Moves team i (0-based) from `from` to `to`, updating every affected
  // cell from the results matrix; z must hold the pre-move labels for all
  // teams other than i (z[i] itself is ignored).
  void move_team(const ResultsMatrix& r, const std::vector<int>& z, int i,
                 int from, int to);

  bool operator==(const SufficientStats& other) const;

 private:
  int k_ = 0;
  std::vector<std::array<std::int64_t, 3>> cells_;  // k*k, row-major
  std::vector<std::int64_t> sizes_;                 // k
};

// Tabulates N_ab^w and n_a from scratch.  Throws InvalidState on label
// violations.  O(N^2).
SufficientStats compute_stats(const ResultsMatrix& r, const BlockState& s);

// Returns stats equal to compute_stats on the state with z_i := new_label,
// touching only cells involving the old or new label.  O(N) per move.
SufficientStats stats_delta_move(const SufficientStats& stats,
                                 const ResultsMatrix& r, const BlockState& s,
                                 int i, int new_label);

// Natural log of Gamma(m) for integer m >= 1, exact-table backed for the
// small arguments this model produces (block counts and sizes).
double log_gamma_int(std::int64_t m);

// Unnormalized log posterior of (z, K) with all continuous parameters
// integrated out.  At default hyperparameters this is the closed product of
// per-cell Dirichlet-multinomial terms Gamma(3) * prod_w Gamma(c_w + 1) /
// Gamma(c_tot + 3), the allocation term prod_a Gamma(n_a + 1) * Gamma(K) /
// Gamma(N + K), the K prior (1/K! or constant), and a 1/occupied! factor
// (occupied = number of non-empty blocks) that removes the ordering of the
// occupied blocks over their labels: at a given K, a partition into j
// blocks is realized by K!/(K-j)! labelled states, and the division leaves
// it total weight proportional to choose(K, j) — one unit per label subset
// rather than per label ordering.  Reported block-count posteriors weight
// partitions this way.  Other hyperparameters route through
// log_collapsed_posterior_general.  Throws InvalidState when k exceeds
// prior.k_max or stats/k/n disagree.
double log_collapsed_posterior(const SufficientStats& stats, int k,
                               const PriorConfig& prior, int n);

// The pre-simplification Beta-function form, valid for any gamma0 > 0 and
// beta > 0.  At gamma0 = 1, beta = (1,1,1) it equals log_collapsed_posterior
// (within floating-point round-off); a test asserts this.
double log_collapsed_posterior_general(const SufficientStats& stats, int k,
                                       const PriorConfig& prior, int n);

}  // namespace blockleague
