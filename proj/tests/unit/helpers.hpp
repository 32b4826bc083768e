#pragma once

#include <string>
#include <vector>

#include "blockleague/league_data.hpp"

namespace testutil {

// Builds a ResultsMatrix from a row-major code array (0 on the diagonal).
inline blockleague::ResultsMatrix matrix_from_codes(int n, const int* codes) {
  std::vector<std::string> teams;
  for (int i = 0; i < n; ++i) teams.push_back(std::string(1, char('A' + i)));
  blockleague::ResultsMatrix r(std::move(teams));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) r.set(i, j, blockleague::outcome_from_code(codes[i * n + j]));
  return r;
}

template <typename Array>
  requires requires(const Array& a) { a.begin(); a.end(); }
blockleague::ResultsMatrix matrix_from_codes(int n, const Array& codes) {
  std::vector<int> v(codes.begin(), codes.end());
  return matrix_from_codes(n, v.data());
}

}  // namespace testutil
