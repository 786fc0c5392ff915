#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oneclock/cost.h"
#include "oneclock/error.h"
#include "oneclock/piecewise_linear.h"
#include "oneclock/priced_game.h"
#include "oneclock/ptg.h"
#include "oneclock/rational.h"
#include "oneclock/sptg.h"

namespace oneclock {

inline constexpr int kFormatVersion = 1;

enum class GameKind { kPriced, kSptg, kPtg };
const char* GameKindName(GameKind kind);

// Where a document problem sits. `field` is a JSON pointer such as
// "/actions/2/cost"; line and column are 1-based, 0 when unknown.
struct Diagnostic {
  ErrorCode code = ErrorCode::kSyntax;
  std::string field;
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;

  std::string ToString() const;
};

class DocumentError : public Error {
 public:
  explicit DocumentError(Diagnostic d)
      : Error(d.code, d.ToString()), diagnostic_(std::move(d)) {}
  const Diagnostic& diagnostic() const { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

struct StateDoc {
  std::string id;
  Player owner = Player::kMin;
  Rational rate;  // unused for priced games

  friend bool operator==(const StateDoc&, const StateDoc&) = default;
};

struct ActionDoc {
  std::string id;
  std::string from;
  std::string to;  // a state id or "bot"
  ExtCost cost;
  std::optional<Interval> interval;  // ptg only
  bool reset = false;                // ptg only

  friend bool operator==(const ActionDoc&, const ActionDoc&) = default;
};

struct GameDocument {
  int version = kFormatVersion;
  GameKind kind = GameKind::kSptg;
  std::vector<StateDoc> states;
  std::vector<ActionDoc> actions;

  int StateIndex(std::string_view id) const;  // kTerminal for "bot"

  friend bool operator==(const GameDocument&, const GameDocument&) = default;
};

// Strict parse with validation; throws DocumentError.
GameDocument ParseGame(std::string_view text);
std::string FormatGame(const GameDocument& doc);

// Throw ValidationError when the document kind does not match.
PricedGame<ExtCost> ToPricedGame(const GameDocument& doc);
Sptg ToSptg(const GameDocument& doc);
Ptg ToPtg(const GameDocument& doc);

// Documents for generated games; states are s0, s1, ... and actions a0, ...
GameDocument ToDocument(const PricedGame<ExtCost>& game);
GameDocument ToDocument(const Sptg& game);
GameDocument ToDocument(const Ptg& game);

struct CellDoc {
  Rational lo, hi;
  bool lo_closed = true;
  bool hi_closed = true;
  std::string action;  // action id or "wait"

  friend bool operator==(const CellDoc&, const CellDoc&) = default;
};

// Action taken just before `at` when the strategy waits into it.
struct EndActionDoc {
  Rational at;
  std::string action;

  friend bool operator==(const EndActionDoc&, const EndActionDoc&) = default;
};

struct CheckDoc {
  std::string name;
  bool ok = true;
  std::string detail;

  friend bool operator==(const CheckDoc&, const CheckDoc&) = default;
};

struct ResultDocument {
  int version = kFormatVersion;
  GameKind kind = GameKind::kSptg;
  std::vector<std::string> ids;
  // priced games
  std::vector<ExtCost> point_values;
  std::vector<std::string> choices;
  // timed games: one function per state, cells per layer and state
  std::vector<PiecewiseLinearFn> values;
  std::vector<std::vector<std::vector<CellDoc>>> strategy;
  std::vector<std::vector<std::vector<EndActionDoc>>> end_actions;  // ptg
  std::vector<Rational> ladder;                                     // ptg
  std::vector<std::pair<std::string, std::uint64_t>> stats;
  std::optional<double> wall_seconds;
  std::vector<CheckDoc> verification;

  bool verified() const;

  friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

ResultDocument MakeResult(const GameDocument& doc,
                          const GameSolution<ExtCost>& solution);
ResultDocument MakeResult(const GameDocument& doc, const SweepResult& result);
ResultDocument MakeResult(const GameDocument& doc, const PtgResult& result);

std::string EmitResult(const ResultDocument& result);
ResultDocument ParseResult(std::string_view text);

// CSV rows "state,x_left,x_right,v_left,v_right": one per segment with its
// one-sided limits, plus a point row (x_left = x_right) wherever the value
// at a breakpoint differs from a neighbouring limit. `decimal` prints
// doubles instead of exact rationals.
std::string EmitPlot(const ResultDocument& result, bool decimal = false);

struct SolveOptions {
  bool verify = false;        // attach oracle cross-checks
  bool instrumented = false;  // single-switch sweeps
  bool timings = false;       // keep wall-clock time in the result
};

// Solves a parsed document of any kind.
ResultDocument SolveDocument(const GameDocument& doc,
                             const SolveOptions& options = {});

// The command-line driver; returns the exit status (0 ok, 1 verification
// failure, 2 input error).
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace oneclock
