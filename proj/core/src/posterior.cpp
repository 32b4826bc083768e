#include "blockleague/posterior.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

#include "blockleague/errors.hpp"

namespace blockleague {

namespace {

struct BlockRank {
  int label = 0;
  bool empty = true;
  // Inter-block dominance as an exact rational: 2*(wins + draws/2) over
  // games, compared by cross-multiplication so equal strengths compare
  // equal regardless of label order.
  std::int64_t twice_win_share = 0;
  std::int64_t inter_games = 0;
  std::int64_t within_home_wins = 0;
  int smallest_member = std::numeric_limits<int>::max();
};

bool stronger(const BlockRank& x, const BlockRank& y) {
  if (x.empty != y.empty) return !x.empty;  // non-empty blocks first
  if (x.empty) return x.label < y.label;    // empties keep label order
  // Compare win shares x.twice/x.games vs y.twice/y.games exactly.  A block
  // with no inter-block games (the only non-empty block) never meets
  // another non-empty block here, so games > 0 for both.
  const __int128 lhs =
      static_cast<__int128>(x.twice_win_share) * y.inter_games;
  const __int128 rhs =
      static_cast<__int128>(y.twice_win_share) * x.inter_games;
  if (lhs != rhs) return lhs > rhs;
  if (x.within_home_wins != y.within_home_wins)
    return x.within_home_wins > y.within_home_wins;
  return x.smallest_member < y.smallest_member;  // label-free tie-break
}

}  // namespace

Permutation identify_strongest(const BlockState& s,
                               const SufficientStats& stats) {
  const int k = s.k;
  if (stats.k() != k)
    throw InvalidStateError("stats cover " + std::to_string(stats.k()) +
                            " blocks but state has " + std::to_string(k));
  std::vector<BlockRank> ranks(k);
  for (int a = 1; a <= k; ++a) {
    BlockRank& br = ranks[a - 1];
    br.label = a;
    br.empty = stats.size_of(a) == 0;
    br.within_home_wins = stats.counts(a, a)[0];
    for (int b = 1; b <= k; ++b) {
      if (b == a) continue;
      const auto& home = stats.counts(a, b);  // block a at home
      const auto& away = stats.counts(b, a);  // block a away
      br.inter_games +=
          home[0] + home[1] + home[2] + away[0] + away[1] + away[2];
      br.twice_win_share += 2 * (home[0] + away[2]) + home[1] + away[1];
    }
  }
  for (std::size_t i = 0; i < s.z.size(); ++i) {
    BlockRank& br = ranks[s.z[i] - 1];
    br.smallest_member = std::min(br.smallest_member, static_cast<int>(i));
  }
  std::stable_sort(ranks.begin(), ranks.end(), stronger);
  Permutation sigma;
  sigma.mapping.assign(k, 0);
  for (int pos = 0; pos < k; ++pos) sigma.mapping[ranks[pos].label - 1] = pos + 1;
  return sigma;
}

void apply_strongest_identification(RelabeledTrace& trace,
                                    const ResultsMatrix& r) {
  for (auto& sample : trace.samples) {
    BlockState s{sample.z, sample.k};
    const SufficientStats stats = compute_stats(r, s);
    const Permutation sigma = identify_strongest(s, stats);
    permute_labels(sample.z, sigma);
  }
}

PosteriorSummary summarize(const RelabeledTrace& trace, int k_max,
                           double threshold) {
  if (trace.samples.empty()) throw InvalidInputError("empty trace");
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw InvalidInputError("threshold must lie in [0, 1]");
  const int n = trace.n;
  const std::size_t s_total = trace.samples.size();

  std::vector<std::int64_t> k_counts(k_max + 1, 0);
  std::map<int, std::vector<std::vector<std::int64_t>>> alloc_counts;
  std::vector<int> dense;  // label -> 1-based rank among occupied labels
  for (const auto& sample : trace.samples) {
    if (sample.k < 1 || sample.k > k_max)
      throw InvalidInputError("sample K = " + std::to_string(sample.k) +
                              " outside [1, " + std::to_string(k_max) + "]");
    // Samples are binned by the number of non-empty blocks: states that
    // differ only in how many unused labels they carry describe the same
    // partition of the teams.  Strength-ordered traces already use the
    // dense labels 1..occ; the ascending-label compaction below is then the
    // identity and merely makes the summary well-defined for raw traces.
    dense.assign(sample.k + 1, 0);
    for (int i = 0; i < n; ++i) dense[sample.z[i]] = 1;
    int occ = 0;
    for (int label = 1; label <= sample.k; ++label)
      if (dense[label]) dense[label] = ++occ;
    k_counts[occ]++;
    auto& mat = alloc_counts[occ];
    if (mat.empty()) mat.assign(n, std::vector<std::int64_t>(occ, 0));
    for (int i = 0; i < n; ++i) mat[i][dense[sample.z[i]] - 1]++;
  }

  PosteriorSummary out;
  out.threshold = threshold;
  out.k_probs.assign(k_max, 0.0);
  for (int k = 1; k <= k_max; ++k)
    out.k_probs[k - 1] =
        static_cast<double>(k_counts[k]) / static_cast<double>(s_total);

  for (const auto& [k, mat] : alloc_counts) {
    auto& probs = out.alloc_probs_given_k[k];
    probs.assign(n, std::vector<double>(k, 0.0));
    for (int i = 0; i < n; ++i)
      for (int b = 0; b < k; ++b)
        probs[i][b] = static_cast<double>(mat[i][b]) /
                      static_cast<double>(k_counts[k]);
  }

  // Marginal membership of the strongest block, averaged over K:
  // sum_k P(z_i = 1 | K = k) * pi(K = k).
  out.top_block_marginal.assign(n, 0.0);
  for (const auto& [k, probs] : out.alloc_probs_given_k) {
    const double pk = out.k_probs[k - 1];
    for (int i = 0; i < n; ++i)
      out.top_block_marginal[i] += probs[i][0] * pk;
  }

  for (int i = 0; i < n; ++i)
    if (out.top_block_marginal[i] > threshold) out.top_block_roster.push_back(i);
  out.top_block_size = static_cast<int>(out.top_block_roster.size());
  return out;
}

namespace {

// Continued-fraction evaluation of the regularized incomplete beta
// function (Lentz's method).
double beta_cf(double a, double b, double x) {
  const int kMaxIterations = 400;
  const double kEps = 3e-16;
  const double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double beta_cdf(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0))
    throw InvalidInputError("beta_cdf requires a > 0 and b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  if (x < (a + 1.0) / (a + b + 2.0))
    return std::exp(log_front) * beta_cf(a, b, x) / a;
  return 1.0 - std::exp(log_front) * beta_cf(b, a, 1.0 - x) / b;
}

double beta_quantile(double a, double b, double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidInputError("quantile level must lie in [0, 1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  // Bisection to 1e-10 absolute width: monotone CDF, so this is exact
  // to the tolerance regardless of shape.
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (beta_cdf(a, b, mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

InteractionPosterior interaction_posterior(const ResultsMatrix& r,
                                           const BlockState& s,
                                           const std::array<double, 3>& beta) {
  for (double b : beta)
    if (!(b > 0.0)) throw InvalidInputError("beta components must be > 0");
  const SufficientStats stats = compute_stats(r, s);
  const int k = s.k;
  InteractionPosterior out;
  out.k = k;
  out.cells.reserve(static_cast<std::size_t>(k) * k);
  for (int a = 1; a <= k; ++a) {
    for (int b = 1; b <= k; ++b) {
      InteractionCell cell;
      cell.home_block = a;
      cell.away_block = b;
      const auto& c = stats.counts(a, b);
      double total = 0.0;
      for (int w = 0; w < 3; ++w) {
        cell.dirichlet[w] = static_cast<double>(c[w]) + beta[w];
        total += cell.dirichlet[w];
      }
      for (int w = 0; w < 3; ++w) {
        const double aw = cell.dirichlet[w];
        cell.mean[w] = aw / total;
        cell.sd[w] = std::sqrt(aw * (total - aw) / (total * total * (total + 1.0)));
        cell.q025[w] = beta_quantile(aw, total - aw, 0.025);
        cell.q975[w] = beta_quantile(aw, total - aw, 0.975);
      }
      out.cells.push_back(cell);
    }
  }
  return out;
}

PosteriorSummary exact_posterior_oracle(const ResultsMatrix& r,
                                        const PriorConfig& prior,
                                        double budget) {
  prior.validate();
  const int n = r.team_count();
  const int k_max = prior.k_max;
  const double states = std::pow(static_cast<double>(k_max), n);
  if (states > budget)
    throw TooLargeError("k_max^N = " + std::to_string(states) +
                        " states exceeds the enumeration budget of " +
                        std::to_string(budget));

  // Pass 1: the maximum log weight, for stable exponentiation.
  // Pass 2: accumulate normalizer, per-K mass, and strongest-block-aligned
  // allocation mass.
  double max_log = -std::numeric_limits<double>::infinity();
  for (int pass = 0; pass < 2; ++pass) {
    double total = 0.0;
    std::vector<double> k_mass(k_max + 1, 0.0);
    std::vector<double> marginal_mass(n, 0.0);
    std::map<int, std::vector<std::vector<double>>> alloc_mass;

    for (int k = 1; k <= k_max; ++k) {
      BlockState s;
      s.k = k;
      s.z.assign(n, 1);
      while (true) {
        const SufficientStats stats = compute_stats(r, s);
        const double lp = log_collapsed_posterior(stats, k, prior, n);
        if (pass == 0) {
          max_log = std::max(max_log, lp);
        } else {
          const double w = std::exp(lp - max_log);
          total += w;
          // Bin by the number of non-empty blocks, matching summarize():
          // states padded with unused labels describe the same partition.
          int occ = 0;
          for (int b = 1; b <= k; ++b)
            if (stats.size_of(b) > 0) ++occ;
          k_mass[occ] += w;
          // identify_strongest ranks non-empty blocks first, so the aligned
          // labels of the teams are exactly 1..occ.
          const Permutation sigma = identify_strongest(s, stats);
          auto& mat = alloc_mass[occ];
          if (mat.empty()) mat.assign(n, std::vector<double>(occ, 0.0));
          for (int i = 0; i < n; ++i) {
            const int aligned = sigma.apply(s.z[i]);
            mat[i][aligned - 1] += w;
            if (aligned == 1) marginal_mass[i] += w;
          }
        }
        // Odometer over z in {1..k}^n.
        int pos = n - 1;
        while (pos >= 0 && s.z[pos] == k) s.z[pos--] = 1;
        if (pos < 0) break;
        s.z[pos]++;
      }
    }

    if (pass == 1) {
      PosteriorSummary out;
      out.threshold = 0.5;
      out.k_probs.assign(k_max, 0.0);
      for (int k = 1; k <= k_max; ++k) out.k_probs[k - 1] = k_mass[k] / total;
      for (auto& [k, mat] : alloc_mass) {
        if (k_mass[k] <= 0.0) continue;
        auto& probs = out.alloc_probs_given_k[k];
        probs.assign(n, std::vector<double>(k, 0.0));
        for (int i = 0; i < n; ++i)
          for (int b = 0; b < k; ++b) probs[i][b] = mat[i][b] / k_mass[k];
      }
      out.top_block_marginal.assign(n, 0.0);
      for (int i = 0; i < n; ++i) out.top_block_marginal[i] = marginal_mass[i] / total;
      for (int i = 0; i < n; ++i)
        if (out.top_block_marginal[i] > out.threshold)
          out.top_block_roster.push_back(i);
      out.top_block_size = static_cast<int>(out.top_block_roster.size());
      return out;
    }
  }
  throw InvalidStateError("unreachable");
}

std::vector<int> top_block_size_series(
    const std::vector<PosteriorSummary>& summaries) {
  std::vector<int> out;
  out.reserve(summaries.size());
  for (const auto& s : summaries) out.push_back(s.top_block_size);
  return out;
}

}  // namespace blockleague
