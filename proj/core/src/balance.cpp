#include "blockleague/balance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "blockleague/errors.hpp"

namespace blockleague {

namespace {

void require_nondegenerate(const PointsTable& pt) {
  long long total = 0;
  for (int p : pt.points) total += p;
  if (total == 0)
    throw DegenerateSeasonError(
        "all teams have zero points; balance indices are undefined");
  if (pt.shares.size() != pt.points.size() || pt.shares.empty())
    throw InvalidInputError("points table has no shares");
}

// A perfectly balanced league scores exactly 1 on both indices; detecting
// it up front keeps that value free of accumulation round-off.
bool uniform_shares(const PointsTable& pt) {
  for (double p : pt.shares)
    if (p != pt.shares[0]) return false;
  return true;
}

// Average ranks (1-based), ties share the mean of their rank range.
std::vector<double> average_ranks(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);  // caller guards zero variance
}

}  // namespace

double hhicb(const PointsTable& pt) {
  require_nondegenerate(pt);
  if (uniform_shares(pt)) return 1.0;
  const double n = static_cast<double>(pt.shares.size());
  double sum_sq = 0.0;
  for (double p : pt.shares) sum_sq += p * p;
  return n * sum_sq;
}

double relative_entropy(const PointsTable& pt, bool* zero_share_flag) {
  require_nondegenerate(pt);
  if (uniform_shares(pt)) {
    if (zero_share_flag) *zero_share_flag = false;
    return 1.0;
  }
  const double n = static_cast<double>(pt.shares.size());
  bool flagged = false;
  double sum = 0.0;
  for (double p : pt.shares) {
    if (p == 0.0) {
      flagged = true;  // 0 * log(0) := 0
      continue;
    }
    sum += p * std::log(p);
  }
  if (zero_share_flag) *zero_share_flag = flagged;
  return sum / std::log(1.0 / n);
}

std::optional<double> spearman(const std::vector<double>& x,
                               const std::vector<double>& y) {
  if (x.size() != y.size())
    throw InvalidInputError("series lengths differ: " +
                            std::to_string(x.size()) + " vs " +
                            std::to_string(y.size()));
  if (x.size() < 2) return std::nullopt;
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  auto constant = [](const std::vector<double>& v) {
    for (double e : v)
      if (e != v[0]) return false;
    return true;
  };
  if (constant(rx) || constant(ry)) return std::nullopt;  // zero variance
  return pearson(rx, ry);
}

IndexPosteriorReport index_vs_posterior(const std::vector<IndexReport>& reports,
                                        const std::vector<double>& k1_probs) {
  if (reports.size() != k1_probs.size())
    throw InvalidInputError("season count mismatch: " +
                            std::to_string(reports.size()) + " reports vs " +
                            std::to_string(k1_probs.size()) + " posteriors");
  IndexPosteriorReport out;
  std::vector<double> hh, re;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out.rows.push_back(IndexPosteriorRow{reports[i].season, reports[i].hhicb,
                                         reports[i].relative_entropy,
                                         k1_probs[i]});
    hh.push_back(reports[i].hhicb);
    re.push_back(reports[i].relative_entropy);
  }
  out.rho_hhicb_k1 = spearman(hh, k1_probs);
  out.rho_entropy_k1 = spearman(re, k1_probs);
  return out;
}

double least_squares_slope(const std::vector<double>& y) {
  const std::size_t n = y.size();
  if (n < 2) throw InvalidInputError("need at least 2 points for a slope");
  const double mx = 0.5 * static_cast<double>(n - 1);
  double my = 0.0;
  for (double v : y) my += v;
  my /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - mx;
    num += dx * (y[i] - my);
    den += dx * dx;
  }
  return num / den;
}

}  // namespace blockleague
