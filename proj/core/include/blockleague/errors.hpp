#pragma once

#include <stdexcept>
#include <string>

namespace blockleague {

// Base class for every error this library raises on purpose.  Each subclass
// carries a stable `code()` string so the CLI can map failures to exit codes
// and machine-readable diagnostics without parsing prose.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// A (home, away) ordered pair appears more than once in an input file.
class DuplicateFixtureError : public Error {
 public:
  explicit DuplicateFixtureError(const std::string& message)
      : Error("DuplicateFixture", message) {}
};

// A double round-robin season is missing at least one ordered pair.
class IncompleteSeasonError : public Error {
 public:
  explicit IncompleteSeasonError(const std::string& message)
      : Error("IncompleteSeason", message) {}
};

// A CSV row could not be understood (bad field count, unknown result token,
// non-numeric goals, unknown team in a fixed team list, ...).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message)
      : Error("ParseError", message) {}
};

// An internal state object violates its invariants (labels out of range,
// sizes inconsistent with assignments, ...).
class InvalidStateError : public Error {
 public:
  explicit InvalidStateError(const std::string& message)
      : Error("InvalidState", message) {}
};

// A caller-supplied value is out of domain (probabilities not summing to 1,
// thresholds outside [0,1], empty traces, ...).
class InvalidInputError : public Error {
 public:
  explicit InvalidInputError(const std::string& message)
      : Error("InvalidInput", message) {}
};

// A configuration object is self-contradictory (non-positive iteration
// counts, burn-in >= iterations, zero move probabilities, ...).
class InvalidConfigError : public Error {
 public:
  explicit InvalidConfigError(const std::string& message)
      : Error("InvalidConfig", message) {}
};

// A season admits no meaningful balance index (e.g. every team has zero
// points so shares are undefined).
class DegenerateSeasonError : public Error {
 public:
  explicit DegenerateSeasonError(const std::string& message)
      : Error("DegenerateSeason", message) {}
};

// Exact enumeration was requested for a problem whose state space exceeds
// the configured budget.
class TooLargeError : public Error {
 public:
  explicit TooLargeError(const std::string& message)
      : Error("TooLarge", message) {}
};

}  // namespace blockleague
