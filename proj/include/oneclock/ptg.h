#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "oneclock/cost.h"
#include "oneclock/piecewise_linear.h"
#include "oneclock/priced_game.h"
#include "oneclock/rational.h"
#include "oneclock/sptg.h"

namespace oneclock {

// A rational interval with independently open or closed ends.
struct Interval {
  Rational lo, hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool Contains(const Rational& x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
  }
  bool IsEmpty() const {
    return hi < lo || (lo == hi && !(lo_closed && hi_closed));
  }
  std::string ToString() const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct PtgAction {
  int source = 0;
  int target = kTerminal;
  ExtCost cost;
  Interval interval;
  bool reset = false;
};

// One-clock priced timed game. Time runs over [0, M] where M is the largest
// interval endpoint; reset actions put the clock back to 0.
class Ptg {
 public:
  int AddState(Player owner, Rational rate);
  int AddAction(int source, int target, ExtCost cost, Interval interval,
                bool reset = false);

  std::size_t num_states() const { return owners_.size(); }
  std::size_t num_actions() const { return actions_.size(); }
  Player owner(int k) const { return owners_[k]; }
  const Rational& rate(int k) const { return rates_[k]; }
  const std::vector<Rational>& rates() const { return rates_; }
  const PtgAction& action(int j) const { return actions_[j]; }
  const std::vector<PtgAction>& actions() const { return actions_; }
  const std::vector<int>& actions_of(int k) const { return by_state_[k]; }

  Rational Horizon() const;  // M
  bool HasResets() const;
  // Distinct destinations of reset actions.
  std::size_t ResetDestinations() const;

  // Throws ValidationError: negative cost or rate, dangling references,
  // lo > hi, empty intervals, M = 0, or a state without an action whose
  // interval contains M.
  void Validate() const;

 private:
  std::vector<Player> owners_;
  std::vector<Rational> rates_;
  std::vector<PtgAction> actions_;
  std::vector<std::vector<int>> by_state_;
};

// 0 and every interval endpoint, descending: M_1 = M > ... > M_d = 0.
std::vector<Rational> EndpointLadder(const Ptg& game);

// The reset-free game of layer `layer` out of `top` + 1. Reset actions
// become exits: in the top layer with cost infinity, below it with cost
// c_j + v0_next[d(j)] (values at time 0 of the layer above).
Ptg UnfoldResets(const Ptg& game, std::size_t layer, std::size_t top,
                 const std::vector<ExtCost>& v0_next);

// Index into the originating PTG action, or one of these markers.
inline constexpr int kExitOrigin = -1;  // the added exit of a state
inline constexpr int kMaxOrigin = -2;   // the "max" state's free exit

struct MomentGame {
  PricedGame<ExtCost> game;
  std::vector<int> origin;  // per action of `game`
};

// Actions available at x plus, when `v` is given, an exit per state with
// cost v_k. Without `v` (the horizon) no exits are added.
MomentGame BuildMomentGame(const Ptg& game, const std::vector<ExtCost>* v,
                           const Rational& x);

struct IntervalSptg {
  Sptg sptg;
  std::vector<int> origin;  // per action of sptg.core
  int max_state = -1;
};

// The SPTG of one ladder interval of the given width, availability frozen
// at x, exits at the right end costing v_right.
IntervalSptg BuildIntervalSptg(const Ptg& game,
                               const std::vector<ExtCost>& v_right,
                               const Rational& x, const Rational& width);

// Games on [0, 1] whose intervals are all [0,1] or [1,1], the latter
// targeting the terminal. Parallel actions (same source, target, interval)
// keep only the owner's best cost. Maximizer [1,1] exits are widened to
// [0,1]; minimizer ones are routed through a new maximizer state "max"
// (the last state) that waits at the largest rate and exits for free.
IntervalSptg TransformEndpointActions(const Ptg& game);

// Where a piece of a value function came from.
struct PtgProvenance {
  std::size_t layer = 0;
  std::size_t interval = 0;  // i: the piece covers (M_i, M_{i-1})
  Rational lo, hi;
  IntervalSptg sptg;
  SweepResult sweep;
};

// ε-strategy description. Cells of each layer cover [0, M] with point cells
// at ladder points. `end_action[layer][i][k]` is the action to take just
// before M_{i-1} when the interval's strategy waits into that endpoint.
struct PtgStrategy {
  std::vector<TimedStrategyProfile> layers;
  std::vector<std::vector<std::vector<int>>> end_action;
};

struct PtgStats {
  std::size_t layers = 0;
  std::size_t reset_destinations = 0;  // r
  std::size_t ladder_size = 0;         // d
  std::size_t oracle_calls = 0;        // SPTG solves
  std::size_t event_points = 0;
  std::size_t sweep_steps = 0;
  std::size_t switch_count = 0;
  double wall_seconds = 0;
};

struct PtgResult {
  std::vector<Rational> ladder;              // descending
  std::vector<PiecewiseLinearFn> values;     // layer 0 over [0, M]
  std::vector<std::vector<PiecewiseLinearFn>> layer_values;
  PtgStrategy strategy;
  std::vector<PtgProvenance> provenance;
  PtgStats stats;
  // Optimal strategies need not exist; the strategy is ε-optimal.
  bool exact_strategy = false;
};

PtgResult SolvePtg(const Ptg& game, const SweepOptions& options = {});

// Concrete cells of one layer for shift δ > 0: after a waiting point cell
// the player waits δ into the interval, and end actions are taken at
// M_{i-1} - δ. Cells touched by a shift are flagged.
TimedStrategyProfile MaterializeStrategy(const PtgResult& result,
                                         std::size_t layer,
                                         const Rational& delta);

}  // namespace oneclock
