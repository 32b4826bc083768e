#pragma once

#include <array>
#include <string>
#include <vector>

#include "blockleague/league_data.hpp"
#include "blockleague/model.hpp"
#include "blockleague/rng.hpp"

namespace blockleague {

// Ground truth used to generate a synthetic season.
struct SimulationTruth {
  std::vector<int> z;  // 1-based labels, teams in block order
  int k = 1;
  // p[(a-1)*k + (b-1)] = outcome distribution for home block a vs away
  // block b (home win, draw, home loss); each row sums to 1.
  std::vector<std::array<double, 3>> p;
};

// Draws a complete double round-robin season: every ordered pair (i, j)
// receives one outcome sampled from p^{z_i z_j}.  Team identifiers are
// T01..TNN.  block_sizes must be positive and sum to the team count;
// each p row must sum to 1 within 1e-9 (InvalidConfig otherwise).
ResultsMatrix simulate_season(const std::vector<int>& block_sizes,
                              const std::vector<std::array<double, 3>>& p,
                              Rng& rng, SimulationTruth* truth = nullptr);

// Convenience generator for planted two-block instances: within-block games
// are uniform over the three outcomes; inter-block games favor the first
// block, which wins with probability `edge` (home or away), the remainder
// split evenly between the other two outcomes.
ResultsMatrix simulate_two_block(int n1, int n2, double edge, Rng& rng,
                                 SimulationTruth* truth = nullptr);

}  // namespace blockleague
