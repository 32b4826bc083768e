#include "blockleague/league_data.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "blockleague/errors.hpp"

namespace blockleague {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

bool is_outcome_token(const std::string& s) {
  std::string u = lower(s);
  return u == "h" || u == "d" || u == "a";
}

Outcome outcome_from_token(const std::string& s, std::size_t row) {
  std::string u = lower(s);
  if (u == "h") return Outcome::kHomeWin;
  if (u == "d") return Outcome::kDraw;
  if (u == "a") return Outcome::kHomeLoss;
  throw ParseError("row " + std::to_string(row) + ": unknown result token '" +
                   s + "' (expected H, D or A)");
}

Outcome outcome_from_goals(const std::string& hg, const std::string& ag,
                           std::size_t row) {
  if (!is_integer(hg) || !is_integer(ag))
    throw ParseError("row " + std::to_string(row) + ": non-numeric goals '" +
                     hg + "','" + ag + "'");
  long h = std::stol(hg), a = std::stol(ag);
  if (h < 0 || a < 0)
    throw ParseError("row " + std::to_string(row) + ": negative goal count");
  if (h > a) return Outcome::kHomeWin;
  if (h == a) return Outcome::kDraw;
  return Outcome::kHomeLoss;
}

struct ParsedRow {
  std::string home, away;
  Outcome outcome;
  std::size_t row_number;
};

}  // namespace

Outcome outcome_from_code(int code) {
  if (code < 1 || code > 3)
    throw InvalidInputError("outcome code must be 1, 2 or 3; got " +
                            std::to_string(code));
  return static_cast<Outcome>(code);
}

ResultsMatrix::ResultsMatrix(std::vector<std::string> teams)
    : teams_(std::move(teams)) {
  if (teams_.size() < 2)
    throw InvalidInputError("a results matrix needs at least 2 teams");
  std::unordered_set<std::string> seen;
  for (const auto& t : teams_) {
    if (t.empty()) throw InvalidInputError("empty team identifier");
    if (!seen.insert(t).second)
      throw InvalidInputError("duplicate team identifier '" + t + "'");
  }
  cells_.assign(teams_.size() * teams_.size(), 0);
}

int ResultsMatrix::team_index(const std::string& name) const {
  for (std::size_t i = 0; i < teams_.size(); ++i)
    if (teams_[i] == name) return static_cast<int>(i);
  return -1;
}

int ResultsMatrix::cell_index(int i, int j) const {
  if (i < 0 || j < 0 || i >= team_count() || j >= team_count() || i == j)
    throw InvalidInputError("invalid cell (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
  return i * team_count() + j;
}

Outcome ResultsMatrix::at(int i, int j) const {
  std::uint8_t v = cells_[cell_index(i, j)];
  if (v == 0)
    throw InvalidInputError("cell (" + std::to_string(i) + "," +
                            std::to_string(j) + ") is unset");
  return static_cast<Outcome>(v);
}

void ResultsMatrix::set(int i, int j, Outcome w) {
  cells_[cell_index(i, j)] = static_cast<std::uint8_t>(w);
}

bool ResultsMatrix::is_set(int i, int j) const {
  return cells_[cell_index(i, j)] != 0;
}

bool ResultsMatrix::complete() const {
  for (int i = 0; i < team_count(); ++i)
    for (int j = 0; j < team_count(); ++j)
      if (i != j && cells_[i * team_count() + j] == 0) return false;
  return true;
}

std::vector<std::pair<int, int>> ResultsMatrix::missing_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < team_count(); ++i)
    for (int j = 0; j < team_count(); ++j)
      if (i != j && cells_[i * team_count() + j] == 0) out.emplace_back(i, j);
  return out;
}

bool ResultsMatrix::operator==(const ResultsMatrix& other) const {
  return teams_ == other.teams_ && cells_ == other.cells_;
}

ResultsMatrix parse_match_csv(const std::string& raw, MatchCsvFormat format) {
  std::vector<std::string> fixed_teams;
  std::vector<ParsedRow> rows;

  // Column layout; -1 while undetermined.  Positional layouts use 0/1 for
  // the team columns; named headers may place them anywhere.
  int col_home = -1, col_away = -1, col_result = -1, col_hg = -1, col_ag = -1;
  bool header_seen = false;

  std::istringstream in(raw);
  std::string line;
  std::size_t row_number = 0;
  while (std::getline(in, line)) {
    ++row_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      std::string body = trim(t.substr(1));
      std::string low = lower(body);
      if (low.rfind("teams:", 0) == 0) {
        if (!fixed_teams.empty())
          throw ParseError("row " + std::to_string(row_number) +
                           ": duplicate team-list directive");
        for (auto& name : split_csv(trim(body.substr(6)))) {
          if (name.empty())
            throw ParseError("row " + std::to_string(row_number) +
                             ": empty name in team list");
          fixed_teams.push_back(name);
        }
      }
      continue;  // other comments ignored
    }

    std::vector<std::string> f = split_csv(t);
    if (f.size() < 3)
      throw ParseError("row " + std::to_string(row_number) +
                       ": expected at least 3 fields, got " +
                       std::to_string(f.size()));

    // Header detection: only before any data row.
    if (rows.empty() && !header_seen) {
      std::vector<std::string> low;
      low.reserve(f.size());
      for (const auto& s : f) low.push_back(lower(s));
      auto find_col = [&](std::initializer_list<const char*> names) {
        for (const char* n : names)
          for (std::size_t c = 0; c < low.size(); ++c)
            if (low[c] == n) return static_cast<int>(c);
        return -1;
      };
      int h = find_col({"hometeam", "home", "home_team"});
      int a = find_col({"awayteam", "away", "away_team"});
      if (h >= 0 && a >= 0) {
        header_seen = true;
        col_home = h;
        col_away = a;
        col_result = find_col({"ftr", "result", "outcome"});
        col_hg = find_col({"fthg", "hg", "home_goals", "homegoals"});
        col_ag = find_col({"ftag", "ag", "away_goals", "awaygoals"});
        if (col_result < 0 && (col_hg < 0 || col_ag < 0))
          throw ParseError("row " + std::to_string(row_number) +
                           ": header lacks a result (FTR) or goals "
                           "(FTHG/FTAG) column");
        continue;
      }
    }

    if (!header_seen) {  // positional layout
      col_home = 0;
      col_away = 1;
      if (format == MatchCsvFormat::kAuto) {
        format = (f.size() >= 4 && is_integer(f[2]) && is_integer(f[3]))
                     ? MatchCsvFormat::kGoals
                     : MatchCsvFormat::kOutcome;
      }
      if (format == MatchCsvFormat::kOutcome) {
        col_result = 2;
      } else {
        col_hg = 2;
        col_ag = 3;
      }
      header_seen = true;  // layout locked by the first data row
    }

    int needed = std::max({col_home, col_away, col_result, col_hg, col_ag});
    if (static_cast<int>(f.size()) <= needed)
      throw ParseError("row " + std::to_string(row_number) + ": expected " +
                       std::to_string(needed + 1) + " fields, got " +
                       std::to_string(f.size()));

    ParsedRow pr;
    pr.home = f[col_home];
    pr.away = f[col_away];
    pr.row_number = row_number;
    if (pr.home.empty() || pr.away.empty())
      throw ParseError("row " + std::to_string(row_number) +
                       ": empty team name");
    if (col_result >= 0 &&
        (is_outcome_token(f[col_result]) || col_hg < 0 || col_ag < 0)) {
      pr.outcome = outcome_from_token(f[col_result], row_number);
    } else if (col_hg >= 0 && col_ag >= 0) {
      pr.outcome = outcome_from_goals(f[col_hg], f[col_ag], row_number);
    } else {
      pr.outcome = outcome_from_token(f[col_result], row_number);
    }
    rows.push_back(std::move(pr));
  }

  if (rows.empty()) throw ParseError("no data rows found");

  // Team order: fixed list if supplied, else first appearance.
  std::vector<std::string> teams = fixed_teams;
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < teams.size(); ++i)
    index[teams[i]] = static_cast<int>(i);
  if (teams.empty()) {
    for (const auto& pr : rows) {
      for (const std::string* name : {&pr.home, &pr.away}) {
        if (index.emplace(*name, static_cast<int>(teams.size())).second)
          teams.push_back(*name);
      }
    }
  } else {
    for (const auto& pr : rows) {
      for (const std::string* name : {&pr.home, &pr.away}) {
        if (!index.count(*name))
          throw ParseError("row " + std::to_string(pr.row_number) +
                           ": team '" + *name +
                           "' not in the declared team list");
      }
    }
  }

  ResultsMatrix r(teams);
  for (const auto& pr : rows) {
    int i = index[pr.home], j = index[pr.away];
    if (i == j)
      throw ParseError("row " + std::to_string(pr.row_number) +
                       ": team '" + pr.home + "' plays itself");
    if (r.is_set(i, j))
      throw DuplicateFixtureError("row " + std::to_string(pr.row_number) +
                                  ": fixture " + pr.home + " vs " + pr.away +
                                  " appears more than once");
    r.set(i, j, pr.outcome);
  }

  if (!r.complete()) {
    auto missing = r.missing_pairs();
    std::ostringstream msg;
    msg << missing.size() << " missing ordered pair"
        << (missing.size() == 1 ? "" : "s") << ":";
    std::size_t shown = std::min<std::size_t>(missing.size(), 20);
    for (std::size_t m = 0; m < shown; ++m)
      msg << " (" << teams[missing[m].first] << "," << teams[missing[m].second]
          << ")";
    if (missing.size() > shown) msg << " ...";
    throw IncompleteSeasonError(msg.str());
  }
  return r;
}

std::string write_match_csv(const ResultsMatrix& r) {
  std::ostringstream out;
  out << "home,away,result\n";
  const char* tokens[] = {"", "H", "D", "A"};
  for (int i = 0; i < r.team_count(); ++i)
    for (int j = 0; j < r.team_count(); ++j)
      if (i != j)
        out << r.teams()[i] << ',' << r.teams()[j] << ','
            << tokens[outcome_code(r.at(i, j))] << '\n';
  return out.str();
}

std::string write_grid(const ResultsMatrix& r) {
  std::ostringstream out;
  for (int j = 0; j < r.team_count(); ++j)
    out << (j ? "," : "") << r.teams()[j];
  out << '\n';
  for (int i = 0; i < r.team_count(); ++i) {
    for (int j = 0; j < r.team_count(); ++j) {
      if (j) out << ',';
      if (i == j)
        out << '-';
      else
        out << outcome_code(r.at(i, j));
    }
    out << '\n';
  }
  return out.str();
}

PointsTable points_table(const ResultsMatrix& r, int points_per_win) {
  if (points_per_win != 2 && points_per_win != 3)
    throw InvalidInputError("points per win must be 2 or 3, got " +
                            std::to_string(points_per_win));
  const int n = r.team_count();
  PointsTable pt;
  pt.teams = r.teams();
  pt.points_per_win = points_per_win;
  pt.points.assign(n, 0);
  pt.wins.assign(n, 0);
  pt.draws.assign(n, 0);
  pt.losses.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      switch (r.at(i, j)) {
        case Outcome::kHomeWin:
          pt.wins[i]++;
          pt.losses[j]++;
          break;
        case Outcome::kDraw:
          pt.draws[i]++;
          pt.draws[j]++;
          break;
        case Outcome::kHomeLoss:
          pt.losses[i]++;
          pt.wins[j]++;
          break;
      }
    }
  }
  long long total = 0;
  for (int i = 0; i < n; ++i) {
    pt.points[i] = points_per_win * pt.wins[i] + pt.draws[i];
    total += pt.points[i];
  }
  if (total == 0)
    throw DegenerateSeasonError(
        "all teams have zero points; shares are undefined");
  pt.shares.resize(n);
  for (int i = 0; i < n; ++i)
    pt.shares[i] = static_cast<double>(pt.points[i]) / static_cast<double>(total);
  return pt;
}

}  // namespace blockleague
