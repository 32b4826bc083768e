#include "blockleague/balance.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "blockleague/errors.hpp"
#include "doctest.h"
#include "expected/expected_values.hpp"
#include "helpers.hpp"

using namespace blockleague;

namespace {

PointsTable table_from_points(std::vector<double> points) {
  PointsTable pt;
  double total = 0.0;
  for (double p : points) total += p;
  for (std::size_t i = 0; i < points.size(); ++i) {
    pt.teams.push_back("T" + std::to_string(i));
    pt.points.push_back(points[i]);
    pt.shares.push_back(total > 0.0 ? points[i] / total : 0.0);
    pt.wins.push_back(0);
    pt.draws.push_back(0);
    pt.losses.push_back(0);
  }
  pt.points_per_win = 3;
  return pt;
}

ResultsMatrix all_draws(int n) {
  std::vector<int> codes(n * n, 2);
  for (int i = 0; i < n; ++i) codes[i * n + i] = 0;
  return testutil::matrix_from_codes(n, codes.data());
}

}  // namespace

TEST_CASE("perfectly balanced seasons score exactly 1 on both indices") {
  for (int n = 2; n <= 30; ++n) {
    PointsTable pt = points_table(all_draws(n));
    bool flagged = true;
    CHECK(hhicb(pt) == 1.0);
    CHECK(relative_entropy(pt, &flagged) == 1.0);
    CHECK_FALSE(flagged);
  }
}

TEST_CASE("indices match the frozen values for shares (0.75, 0.25)") {
  // Two teams under the 2-point win scheme: a home win plus an away draw
  // gives points (3, 1), hence shares (0.75, 0.25).
  const int codes[4] = {0, 1, 2, 0};
  ResultsMatrix r = testutil::matrix_from_codes(2, codes);
  PointsTable pt = points_table(r, 2);
  REQUIRE(pt.shares[0] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(hhicb(pt) == doctest::Approx(expected::kHhicb_75_25).epsilon(1e-14));
  CHECK(relative_entropy(pt) ==
        doctest::Approx(expected::kRelEntropy_75_25).epsilon(1e-14));
}

TEST_CASE("indices depend only on the share vector") {
  PointsTable a = table_from_points({3, 1});
  PointsTable b = table_from_points({30, 10});
  CHECK(hhicb(a) == doctest::Approx(hhicb(b)).epsilon(1e-14));
  CHECK(relative_entropy(a) ==
        doctest::Approx(relative_entropy(b)).epsilon(1e-14));

  PointsTable c = table_from_points({5, 2, 9, 4});
  PointsTable d = table_from_points({9, 4, 5, 2});
  CHECK(hhicb(c) == doctest::Approx(hhicb(d)).epsilon(1e-14));
  CHECK(relative_entropy(c) ==
        doctest::Approx(relative_entropy(d)).epsilon(1e-14));
}

TEST_CASE("a pointless team trips the zero-share convention") {
  PointsTable pt = table_from_points({4, 0});
  bool flagged = false;
  const double re = relative_entropy(pt, &flagged);
  CHECK(flagged);
  CHECK(re == doctest::Approx(0.0));  // 1*log(1) + [0*log(0) := 0]
  CHECK(hhicb(pt) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("an all-zero table is rejected as degenerate") {
  PointsTable pt = table_from_points({0, 0, 0});
  CHECK_THROWS_AS(hhicb(pt), DegenerateSeasonError);
  CHECK_THROWS_AS(relative_entropy(pt), DegenerateSeasonError);
}

TEST_CASE("a malformed table is rejected") {
  PointsTable pt = table_from_points({3, 1});
  pt.shares.pop_back();
  CHECK_THROWS_AS(hhicb(pt), InvalidInputError);
}

TEST_CASE("rank correlation handles ties with average ranks") {
  const std::vector<double> x{1.2, 3.4, 3.4, 0.5, 7.7, 2.0};
  const std::vector<double> y{10.0, 5.0, 6.0, 12.0, 1.0, 6.0};
  auto rho = spearman(x, y);
  REQUIRE(rho.has_value());
  CHECK(*rho == doctest::Approx(expected::kSpearmanTied).epsilon(1e-13));
}

TEST_CASE("rank correlation hits the extremes on monotone data") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> up{10, 20, 30, 40, 50};
  const std::vector<double> down{9, 7, 5, 3, 1};
  CHECK(*spearman(x, up) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(*spearman(x, down) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("rank correlation is undefined on constant series") {
  CHECK_FALSE(spearman({1, 1, 1}, {1, 2, 3}).has_value());
  CHECK_FALSE(spearman({1, 2, 3}, {5, 5, 5}).has_value());
  CHECK_FALSE(spearman({1}, {2}).has_value());
  CHECK_THROWS_AS(spearman({1, 2}, {1, 2, 3}), InvalidInputError);
}

TEST_CASE("index/posterior join pairs rows and correlates them") {
  std::vector<IndexReport> reports;
  // Three seasons: increasingly unbalanced shares.
  for (auto points : {std::vector<double>{2, 2, 2}, std::vector<double>{3, 2, 1},
                      std::vector<double>{5, 1, 0}}) {
    PointsTable pt = table_from_points(points);
    IndexReport rep;
    rep.season = "s" + std::to_string(reports.size());
    rep.hhicb = hhicb(pt);
    rep.relative_entropy = relative_entropy(pt, &rep.zero_share_flagged);
    reports.push_back(rep);
  }
  // Less balance should mean less posterior mass on a single block.
  const std::vector<double> k1{0.9, 0.5, 0.1};
  IndexPosteriorReport joined = index_vs_posterior(reports, k1);
  REQUIRE(joined.rows.size() == 3);
  CHECK(joined.rows[1].season == "s1");
  CHECK(joined.rows[1].pi_k1 == 0.5);
  REQUIRE(joined.rho_hhicb_k1.has_value());
  REQUIRE(joined.rho_entropy_k1.has_value());
  CHECK(*joined.rho_hhicb_k1 == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(*joined.rho_entropy_k1 == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(index_vs_posterior(reports, {0.5}), InvalidInputError);
}

TEST_CASE("least-squares slope measures linear trend") {
  CHECK(least_squares_slope({1, 3, 5, 7}) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(least_squares_slope({4, 4, 4}) == doctest::Approx(0.0));
  CHECK(least_squares_slope({10, 7, 4, 1}) ==
        doctest::Approx(-3.0).epsilon(1e-13));
}
