#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace blockleague {

// Outcome of one match from the home team's perspective.
// Exactly three values are representable.
enum class Outcome : std::uint8_t {
  kHomeWin = 1,
  kDraw = 2,
  kHomeLoss = 3,
};

inline int outcome_code(Outcome w) { return static_cast<int>(w); }
Outcome outcome_from_code(int code);  // throws InvalidInput unless code in {1,2,3}

// Dense N x N categorical adjacency of home-game outcomes.  Every ordered
// pair (i, j), i != j, holds exactly one Outcome; the diagonal is absent.
class ResultsMatrix {
 public:
  // Builds an empty (all-unset) matrix over the given team list.
  // Throws InvalidInput if fewer than two teams or duplicate identifiers.
  explicit ResultsMatrix(std::vector<std::string> teams);

  int team_count() const { return static_cast<int>(teams_.size()); }
  const std::vector<std::string>& teams() const { return teams_; }
  // Index of a team identifier, or -1 if absent.
  int team_index(const std::string& name) const;

  // Cell access with 0-based team indices; i != j required.
  Outcome at(int i, int j) const;
  void set(int i, int j, Outcome w);
  bool is_set(int i, int j) const;

  // True once every off-diagonal cell has been assigned.
  bool complete() const;
  // 0-based (i, j) pairs still missing, in row-major order.
  std::vector<std::pair<int, int>> missing_pairs() const;

  bool operator==(const ResultsMatrix& other) const;

 private:
  int cell_index(int i, int j) const;
  std::vector<std::string> teams_;
  std::vector<std::uint8_t> cells_;  // 0 = unset, else outcome code
};

// Input layout for parse_match_csv.
enum class MatchCsvFormat {
  kAuto,     // infer outcome vs goals from the first data row
  kOutcome,  // home,away,H|D|A
  kGoals,    // home,away,home_goals,away_goals
};

// Parses match rows into a complete ResultsMatrix.
//
// Accepted layouts:
//   outcome rows:  home,away,H|D|A
//   goals rows:    home,away,home_goals,away_goals
// plus optional leading comment lines ("# ..."), one optional team-list
// directive ("# teams: A,B,C" fixing team order), and one optional header
// row.  Header rows are recognised either positionally ("home,away,result")
// or by football-data.co.uk column names (HomeTeam, AwayTeam, FTR or
// FTHG/FTAG), in which case named columns are used and all others ignored.
//
// Team order is first-appearance order unless the team-list directive is
// present.  Errors: DuplicateFixture, IncompleteSeason (lists missing
// ordered pairs), ParseError (with 1-based row number).
ResultsMatrix parse_match_csv(const std::string& raw,
                              MatchCsvFormat format = MatchCsvFormat::kAuto);

// Serializes to the outcome CSV layout ("home,away,result" header, one row
// per ordered pair in row-major order).  parse_match_csv of the output
// reproduces the matrix exactly, including team order.
std::string write_match_csv(const ResultsMatrix& r);

// Grid rendering: header row of team IDs, then N rows of N entries with "-"
// on the diagonal and codes 1/2/3 elsewhere.  Output artifact only.
std::string write_grid(const ResultsMatrix& r);

// Season points table under a w-points-per-win, 1-per-draw scheme.
struct PointsTable {
  std::vector<std::string> teams;
  std::vector<int> points;        // s_i >= 0
  std::vector<double> shares;     // p_i = s_i / sum(s), sums to 1
  std::vector<int> wins, draws, losses;
  int points_per_win = 3;
};

// Computes points and shares; w must be 2 or 3 (InvalidInput otherwise).
// Throws DegenerateSeason if every team has zero points (shares undefined).
PointsTable points_table(const ResultsMatrix& r, int points_per_win = 3);

}  // namespace blockleague
