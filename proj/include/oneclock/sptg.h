#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "oneclock/cost.h"
#include "oneclock/piecewise_linear.h"
#include "oneclock/priced_game.h"
#include "oneclock/rational.h"

namespace oneclock {

// A priced game whose states charge the minimizer a rate per unit of time
// spent waiting in them. Time runs over [0, 1]; all actions are always
// available.
struct Sptg {
  PricedGame<ExtCost> core;
  std::vector<Rational> rates;

  int AddState(Player owner, Rational rate);
  int AddAction(int source, int target, ExtCost cost) {
    return core.AddAction(source, target, std::move(cost));
  }
  std::size_t num_states() const { return core.num_states(); }
  std::size_t num_actions() const { return core.num_actions(); }

  void Validate() const;
};

// Label of a waiting cell.
inline constexpr int kWait = -1;

// A time cell of a strategy with its own open/closed ends.
struct StrategyCell {
  Rational lo, hi;
  bool lo_closed = true;
  bool hi_closed = false;
  int label = kWait;  // action index or kWait
  bool shifted = false;  // moved by a PTG ε-shift

  bool Contains(const Rational& x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
  }
  friend bool operator==(const StrategyCell&, const StrategyCell&) = default;
};

// Per state, cells partitioning the time domain in increasing order.
struct TimedStrategyProfile {
  std::vector<std::vector<StrategyCell>> cells;

  // The cell of `state` containing x, or nullptr.
  const StrategyCell* CellAt(int state, const Rational& x) const;
};

// The line c_j + a(d(j)) + b(d(j)) * (x - x'') for one action at sweep
// time x. An infinite intercept is the infinite line.
struct EventLine {
  ExtCost intercept;
  Rational slope;
};

// One step of the sweep: on [lo, hi) the profile `sigma` of the ε-game
// built from `values_at_hi` is optimal and v(x'') = a + b (hi - x'').
struct SweepStep {
  Rational lo, hi;
  std::vector<ExtCost> values_at_hi;  // a
  std::vector<Rational> slopes;       // b
  StrategyProfile sigma;              // indices of the ε-game
};

struct SolveStats {
  std::size_t event_points = 0;  // L: interior kinks after merging
  std::size_t sweep_steps = 0;
  std::size_t switch_count = 0;
  std::size_t potential_violations = 0;  // instrumented path only
  std::vector<double> step_seconds;
  double wall_seconds = 0;
};

struct SweepResult {
  std::vector<PiecewiseLinearFn> values;
  TimedStrategyProfile strategy;
  SolveStats stats;
  std::vector<ExtCost> values_at_one;
  StrategyProfile profile_at_one;  // indices of the core game
  std::vector<SweepStep> trace;    // right to left
};

struct SweepOptions {
  // Solve each ε-game with one-switch-at-a-time strategy iteration seeded by
  // the previous profile and count potential-matrix violations.
  bool instrumented = false;
};

// The ε-game G^x: state k gains action num_actions()+k to the terminal with
// cost v_k + r_k ε.
PricedGame<EpsCost> BuildEpsGame(const Sptg& game,
                                 const std::vector<ExtCost>& v_at_x);

// Values and normalized profile of the core game (no waiting).
GameSolution<ExtCost> SolveAtTimeOne(const Sptg& game);

EventLine ActionLine(const PricedGame<EpsCost>& eps_game, int action,
                     const std::vector<ExtCost>& a,
                     const std::vector<Rational>& b);

// Largest x' in [0, x) where a non-chosen line of some state meets that
// state's chosen line, or 0.
Rational NextEventPoint(const PricedGame<EpsCost>& eps_game,
                        const Rational& x, const std::vector<ExtCost>& a,
                        const std::vector<Rational>& b,
                        const StrategyProfile& sigma);

SweepResult SolveSptg(const Sptg& game, const SweepOptions& options = {});

// Cells of one sweep step turned into a profile over [0, 1]: adjacent cells
// with equal labels merge, the point {1} keeps its own cell.
TimedStrategyProfile AssembleStrategy(const Sptg& game,
                                      const std::vector<SweepStep>& trace,
                                      const StrategyProfile& profile_at_one);

}  // namespace oneclock
