#include "blockleague/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "blockleague/errors.hpp"

namespace blockleague {

ResultsMatrix simulate_season(const std::vector<int>& block_sizes,
                              const std::vector<std::array<double, 3>>& p,
                              Rng& rng, SimulationTruth* truth) {
  const int k = static_cast<int>(block_sizes.size());
  if (k < 1) throw InvalidConfigError("need at least one block");
  int n = 0;
  for (int size : block_sizes) {
    if (size <= 0) throw InvalidConfigError("block sizes must be positive");
    n += size;
  }
  if (n < 2) throw InvalidConfigError("need at least two teams");
  if (static_cast<int>(p.size()) != k * k)
    throw InvalidConfigError("interaction array must have K*K rows, got " +
                             std::to_string(p.size()));
  for (const auto& row : p) {
    double sum = 0.0;
    for (double v : row) {
      if (v < 0.0) throw InvalidConfigError("outcome probabilities must be >= 0");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw InvalidConfigError("each outcome distribution must sum to 1");
  }

  std::vector<std::string> teams(n);
  for (int i = 0; i < n; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "T%02d", i + 1);
    teams[i] = buf;
  }
  std::vector<int> z(n);
  int next = 0;
  for (int b = 0; b < k; ++b)
    for (int c = 0; c < block_sizes[b]; ++c) z[next++] = b + 1;

  ResultsMatrix r(std::move(teams));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& row = p[static_cast<std::size_t>(z[i] - 1) * k + (z[j] - 1)];
      const double u = rng.uniform01();
      Outcome w;
      if (u < row[0])
        w = Outcome::kHomeWin;
      else if (u < row[0] + row[1])
        w = Outcome::kDraw;
      else
        w = Outcome::kHomeLoss;
      r.set(i, j, w);
    }
  }
  if (truth) {
    truth->z = z;
    truth->k = k;
    truth->p = p;
  }
  return r;
}

ResultsMatrix simulate_two_block(int n1, int n2, double edge, Rng& rng,
                                 SimulationTruth* truth) {
  if (!(edge >= 0.0 && edge <= 1.0))
    throw InvalidConfigError("edge must lie in [0, 1]");
  const double rem = 1.0 - edge;
  // Block 1 dominates inter-block games with probability `edge` of winning,
  // the remainder split evenly between draw and loss; within-block games
  // are uniform over the three outcomes.
  const std::array<double, 3> uniform = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  const std::array<double, 3> strong_home = {edge, rem / 2, rem / 2};
  const std::array<double, 3> strong_away = {rem / 2, rem / 2, edge};
  const std::vector<std::array<double, 3>> p = {uniform, strong_home,
                                                strong_away, uniform};
  return simulate_season({n1, n2}, p, rng, truth);
}

}  // namespace blockleague
