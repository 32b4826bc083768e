#pragma once

#include <vector>

#include "blockleague/league_data.hpp"
#include "blockleague/rng.hpp"

namespace benchutil {

// A deterministic random complete season with n teams.
inline blockleague::ResultsMatrix random_season(int n, std::uint64_t seed) {
  blockleague::Rng rng(seed);
  std::vector<std::string> teams;
  teams.reserve(n);
  for (int i = 0; i < n; ++i) teams.push_back("T" + std::to_string(i));
  blockleague::ResultsMatrix r(std::move(teams));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j)
        r.set(i, j,
              blockleague::outcome_from_code(
                  1 + static_cast<int>(rng.uniform_int(3))));
  return r;
}

}  // namespace benchutil
