#include "blockleague/model.hpp"

#include <cassert>
#include <cmath>
#include <string>
#include <vector>

#include "blockleague/errors.hpp"

namespace blockleague {

void PriorConfig::validate() const {
  if (k_max < 1)
    throw InvalidConfigError("k_max must be >= 1, got " + std::to_string(k_max));
  if (!(gamma0 > 0.0))
    throw InvalidConfigError("gamma0 must be > 0");
  for (double b : beta)
    if (!(b > 0.0)) throw InvalidConfigError("beta components must be > 0");
}

void BlockState::validate(int k_max) const {
  if (k < 1 || k > k_max)
    throw InvalidStateError("k = " + std::to_string(k) + " outside [1, " +
                            std::to_string(k_max) + "]");
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] < 1 || z[i] > k)
      throw InvalidStateError("z[" + std::to_string(i) + "] = " +
                              std::to_string(z[i]) + " outside {1.." +
                              std::to_string(k) + "}");
}

SufficientStats::SufficientStats(int k) : k_(k) {
  cells_.assign(static_cast<std::size_t>(k) * k, {0, 0, 0});
  sizes_.assign(k, 0);
}

void SufficientStats::add_empty_block() {
  const int k = k_;
  std::vector<std::array<std::int64_t, 3>> next(
      static_cast<std::size_t>(k + 1) * (k + 1), {0, 0, 0});
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      next[static_cast<std::size_t>(a) * (k + 1) + b] =
          cells_[static_cast<std::size_t>(a) * k + b];
  cells_ = std::move(next);
  sizes_.push_back(0);
  ++k_;
}

void SufficientStats::remove_last_block() {
  const int k = k_;
  assert(k >= 2 && sizes_[k - 1] == 0);
  for (int b = 0; b < k; ++b) {
    const auto& c1 = cells_[static_cast<std::size_t>(k - 1) * k + b];
    const auto& c2 = cells_[static_cast<std::size_t>(b) * k + (k - 1)];
    assert(c1[0] + c1[1] + c1[2] == 0 && c2[0] + c2[1] + c2[2] == 0);
    (void)c1;
    (void)c2;
  }
  std::vector<std::array<std::int64_t, 3>> next(
      static_cast<std::size_t>(k - 1) * (k - 1));
  for (int a = 0; a < k - 1; ++a)
    for (int b = 0; b < k - 1; ++b)
      next[static_cast<std::size_t>(a) * (k - 1) + b] =
          cells_[static_cast<std::size_t>(a) * k + b];
  cells_ = std::move(next);
  sizes_.pop_back();
  --k_;
}

void SufficientStats::swap_blocks(int a, int b) {
  if (a == b) return;
  const int k = k_;
  assert(a >= 1 && a <= k && b >= 1 && b <= k);
  for (int c = 1; c <= k; ++c) std::swap(counts(a, c), counts(b, c));
  for (int c = 1; c <= k; ++c) std::swap(counts(c, a), counts(c, b));
  std::swap(sizes_[a - 1], sizes_[b - 1]);
}

void SufficientStats::merge_block_into(int dst, int src) {
  assert(dst != src);
  const int k = k_;
  for (int w = 0; w < 3; ++w) {
    // Within-pair games first so the row/column sweeps below can skip them.
    counts(dst, dst)[w] +=
        counts(src, src)[w] + counts(dst, src)[w] + counts(src, dst)[w];
    counts(src, src)[w] = 0;
    counts(dst, src)[w] = 0;
    counts(src, dst)[w] = 0;
  }
  for (int c = 1; c <= k; ++c) {
    if (c == dst || c == src) continue;
    for (int w = 0; w < 3; ++w) {
      counts(dst, c)[w] += counts(src, c)[w];
      counts(src, c)[w] = 0;
      counts(c, dst)[w] += counts(c, src)[w];
      counts(c, src)[w] = 0;
    }
  }
  sizes_[dst - 1] += sizes_[src - 1];
  sizes_[src - 1] = 0;
}

void SufficientStats::move_team(const ResultsMatrix& r,
                                const std::vector<int>& z, int i, int from,
                                int to) {
  if (from == to) return;
  assert(from >= 1 && from <= k_ && to >= 1 && to <= k_);
  const int n = r.team_count();
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const int zj = z[j];
    const int home_w = outcome_code(r.at(i, j)) - 1;  // i at home vs j
    counts(from, zj)[home_w]--;
    counts(to, zj)[home_w]++;
    const int away_w = outcome_code(r.at(j, i)) - 1;  // j at home vs i
    counts(zj, from)[away_w]--;
    counts(zj, to)[away_w]++;
  }
  sizes_[from - 1]--;
  sizes_[to - 1]++;
  assert(sizes_[from - 1] >= 0);
}

bool SufficientStats::operator==(const SufficientStats& other) const {
  return k_ == other.k_ && cells_ == other.cells_ && sizes_ == other.sizes_;
}

SufficientStats compute_stats(const ResultsMatrix& r, const BlockState& s) {
  const int n = r.team_count();
  if (static_cast<int>(s.z.size()) != n)
    throw InvalidStateError("allocation length " +
                            std::to_string(s.z.size()) +
                            " does not match team count " + std::to_string(n));
  s.validate(s.k);
  SufficientStats stats(s.k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      stats.counts(s.z[i], s.z[j])[outcome_code(r.at(i, j)) - 1]++;
    }
  }
  for (int i = 0; i < n; ++i) stats.add_team_to(s.z[i]);
  return stats;
}

SufficientStats stats_delta_move(const SufficientStats& stats,
                                 const ResultsMatrix& r, const BlockState& s,
                                 int i, int new_label) {
  if (new_label < 1 || new_label > s.k)
    throw InvalidStateError("new label " + std::to_string(new_label) +
                            " outside {1.." + std::to_string(s.k) + "}");
  SufficientStats out = stats;
  out.move_team(r, s.z, i, s.z[i], new_label);
  return out;
}

namespace {

// lgamma(m) for integer m is used on every cell of every posterior
// evaluation; a lazily grown table turns those calls into loads.  Arguments
// are bounded by N(N-1) + sum(beta) + N + K for any realistic league, so the
// table stays tiny.
class LogGammaTable {
 public:
  double operator()(std::int64_t m) {
    assert(m >= 1);
    if (static_cast<std::size_t>(m) >= values_.size()) grow(m);
    return values_[static_cast<std::size_t>(m)];
  }

 private:
  void grow(std::int64_t m) {
    std::size_t old = values_.size();
    if (old == 0) {
      values_ = {0.0, 0.0};  // index 0 unused; lgamma(1) = 0
      old = 2;
    }
    std::size_t want = static_cast<std::size_t>(m) + 1;
    std::size_t next = std::max(want, old * 2);
    values_.resize(next);
    for (std::size_t v = old; v < next; ++v)
      values_[v] = values_[v - 1] + std::log(static_cast<double>(v - 1));
  }
  std::vector<double> values_;
};

thread_local LogGammaTable lgamma_table;

const double kLogGamma3 = std::log(2.0);  // lgamma(3)

double log_k_prior(int k, const PriorConfig& prior) {
  // Unnormalized: truncated Poisson(1) gives 1/K!, uniform gives 1.
  if (prior.k_prior == KPrior::kTruncatedPoisson1)
    return -lgamma_table(k + 1);
  return 0.0;
}

void check_consistency(const SufficientStats& stats, int k,
                       const PriorConfig& prior, int n) {
  if (k < 1 || k > prior.k_max)
    throw InvalidStateError("k = " + std::to_string(k) + " outside [1, " +
                            std::to_string(prior.k_max) + "]");
  if (stats.k() != k)
    throw InvalidStateError("stats cover " + std::to_string(stats.k()) +
                            " blocks but k = " + std::to_string(k));
  std::int64_t teams = 0;
  for (int a = 1; a <= k; ++a) teams += stats.size_of(a);
  if (teams != n)
    throw InvalidStateError("block sizes sum to " + std::to_string(teams) +
                            " but n = " + std::to_string(n));
}

}  // namespace

double log_gamma_int(std::int64_t m) {
  if (m < 1) throw InvalidInputError("log_gamma_int requires m >= 1");
  return lgamma_table(m);
}

double log_collapsed_posterior(const SufficientStats& stats, int k,
                               const PriorConfig& prior, int n) {
  if (!prior.default_hyperparameters())
    return log_collapsed_posterior_general(stats, k, prior, n);
  check_consistency(stats, k, prior, n);

  double lp = 0.0;
  for (int a = 1; a <= k; ++a) {
    for (int b = 1; b <= k; ++b) {
      const auto& c = stats.counts(a, b);
      const std::int64_t tot = c[0] + c[1] + c[2];
      if (tot == 0) continue;  // Gamma(3) * 1 / Gamma(3) = 1
      lp += kLogGamma3 + lgamma_table(c[0] + 1) + lgamma_table(c[1] + 1) +
            lgamma_table(c[2] + 1) - lgamma_table(tot + 3);
    }
  }
  int occupied = 0;
  for (int a = 1; a <= k; ++a) {
    lp += lgamma_table(stats.size_of(a) + 1);
    if (stats.size_of(a) > 0) ++occupied;
  }
  // Posterior mass attaches to unordered block partitions: states that
  // differ only by which labels the occupied blocks carry are the same
  // clustering, so each labelled state carries 1/occupied! of its
  // partition's mass.  Reported block-count distributions and the
  // brute-force enumeration both rely on this weighting.
  lp -= lgamma_table(occupied + 1);
  lp += lgamma_table(k) - lgamma_table(n + k);
  lp += log_k_prior(k, prior);
  return lp;
}

double log_collapsed_posterior_general(const SufficientStats& stats, int k,
                                       const PriorConfig& prior, int n) {
  prior.validate();
  check_consistency(stats, k, prior, n);
  const double b1 = prior.beta[0], b2 = prior.beta[1], b3 = prior.beta[2];
  const double bsum = b1 + b2 + b3;
  const double cell_const =
      std::lgamma(bsum) - std::lgamma(b1) - std::lgamma(b2) - std::lgamma(b3);

  double lp = 0.0;
  for (int a = 1; a <= k; ++a) {
    for (int b = 1; b <= k; ++b) {
      const auto& c = stats.counts(a, b);
      lp += cell_const + std::lgamma(c[0] + b1) + std::lgamma(c[1] + b2) +
            std::lgamma(c[2] + b3) -
            std::lgamma(static_cast<double>(c[0] + c[1] + c[2]) + bsum);
    }
  }
  const double g = prior.gamma0;
  lp += std::lgamma(k * g) - k * std::lgamma(g);
  int occupied = 0;
  for (int a = 1; a <= k; ++a) {
    lp += std::lgamma(static_cast<double>(stats.size_of(a)) + g);
    if (stats.size_of(a) > 0) ++occupied;
  }
  lp -= std::lgamma(static_cast<double>(n) + k * g);
  // Same unordered-partition weighting as the default-hyperparameter path.
  lp -= std::lgamma(static_cast<double>(occupied) + 1.0);
  lp += log_k_prior(k, prior);
  return lp;
}

}  // namespace blockleague
