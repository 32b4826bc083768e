#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blockleague/league_data.hpp"

namespace blockleague {

// Classical balance indices for one season.
struct IndexReport {
  std::string season;
  double hhicb = 0.0;
  double relative_entropy = 0.0;
  // True when a zero points share forced the 0*log(0) := 0 convention.
  bool zero_share_flagged = false;
};

// Herfindahl-Hirschman index of competitive balance: n * sum(p_i^2).
// Equals 1 exactly for uniform shares; grows with concentration.
// Throws DegenerateSeason when all points are zero.
double hhicb(const PointsTable& pt);

// Normalized Shannon entropy of points shares:
// (sum p_i log p_i) / log(1/n), in (0, 1], 1 for uniform shares.
// Zero shares contribute 0 (flag reported via the pointer if given).
double relative_entropy(const PointsTable& pt, bool* zero_share_flag = nullptr);

// Spearman rank correlation with average ranks for ties.
// Returns nullopt when either series has zero rank variance.
std::optional<double> spearman(const std::vector<double>& x,
                               const std::vector<double>& y);

// Paired index-versus-posterior series and their rank correlations.
struct IndexPosteriorRow {
  std::string season;
  double hhicb = 0.0;
  double relative_entropy = 0.0;
  double pi_k1 = 0.0;  // pi(K = 1 | y)
};

struct IndexPosteriorReport {
  std::vector<IndexPosteriorRow> rows;
  std::optional<double> rho_hhicb_k1;    // nullopt when undefined
  std::optional<double> rho_entropy_k1;
};

// Joins per-season index reports with per-season pi(K=1|y) values (aligned
// by position; InvalidInput on length mismatch) and computes Spearman rank
// correlations between each index and pi(K=1|y).
IndexPosteriorReport index_vs_posterior(const std::vector<IndexReport>& reports,
                                        const std::vector<double>& k1_probs);

// Ordinary least-squares slope of y against 0..n-1; used for trend checks.
double least_squares_slope(const std::vector<double>& y);

}  // namespace blockleague
