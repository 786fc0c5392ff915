#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "oneclock/cost.h"
#include "oneclock/piecewise_linear.h"
#include "oneclock/potential.h"
#include "oneclock/priced_game.h"
#include "oneclock/ptg.h"
#include "oneclock/sptg.h"

namespace oneclock {

// Backward induction on the number of transitions, starting from v = inf:
//   v'_k = WaitClosure(opt_j (c_j + v_{d(j)}), r_k, owner(k)).
// Stops at the exact fixpoint; throws kNonConvergence after `cap` rounds.
struct ValueIterationResult {
  std::vector<PiecewiseLinearFn> values;
  std::size_t iterations = 0;
};
ValueIterationResult ValueIterationSptg(const Sptg& game, std::size_t cap);

struct PlayStep {
  int state = 0;
  Rational time;
  int action = kWait;  // taken at `time` after waiting `delay`
  Rational delay;
  std::size_t layer = 0;
};

struct Play {
  std::vector<PlayStep> steps;
  bool terminal = false;  // reached the terminal state
  ExtCost cost;
  std::size_t shifts = 0;  // visits to cells moved by an ε-shift
};

// Follows the cells from (state, time). Waiting runs to the start of the
// next non-waiting cell. A revisit of (state, time, layer) is an infinite
// play with cost inf. `state == kTerminal` gives the empty play.
Play SimulateSptg(const Sptg& game, const TimedStrategyProfile& strategy,
                  int state, const Rational& time);

// `layers[l]` is the materialized profile of reset layer l. A reset taken
// in the top layer ends the play with cost inf.
Play SimulatePtg(const Ptg& game,
                 const std::vector<TimedStrategyProfile>& layers, int state,
                 const Rational& time);

struct EquilibriumFailure {
  std::string kind;  // "simulation", "cell", "switch"
  int state = -1;
  Rational time;
  std::size_t cell = 0;  // index into strategy.cells[state]
  std::string detail;
};

struct EquilibriumReport {
  std::size_t probes = 0;
  std::size_t certificates = 0;
  std::vector<EquilibriumFailure> failures;
  bool ok() const { return failures.empty(); }
};

// (a) simulation from every cell's endpoints and midpoint plus `samples`
// evenly spaced extra times per state must cost exactly v_k(x); (b) the
// recorded profile of every sweep step has no improving switch in its
// ε-game, and the time-1 profile none in the core game; (c) the strategy
// cells agree with the recorded profiles.
EquilibriumReport CheckEquilibrium(const Sptg& game, const SweepResult& result,
                                   std::size_t samples);

// max over maximizer profiles of min over minimizer profiles, per state.
// Throws kBudgetExceeded when the profile count exceeds `budget`.
template <class C>
std::vector<C> BruteForcePriced(const PricedGame<C>& game,
                                std::size_t budget = 1'000'000);

struct RandomOptions {
  std::size_t states = 3;
  std::size_t max_actions = 3;  // per state
  std::uint64_t seed = 1;
  bool infinite_costs = false;
  bool resets = true;          // ptg only
  bool reachability = false;   // ptg only: rates 1, costs 0
  // sptg only: edges go to later states and every state can exit, so all
  // values are finite.
  bool layered = false;
};

PricedGame<ExtCost> RandomPricedGame(const RandomOptions& options);
Sptg RandomSptg(const RandomOptions& options);
Ptg RandomPtg(const RandomOptions& options);

// The product of (|A_k| + 1) and 12^n, capped at `cap`.
std::size_t ProfileBound(const Sptg& game, std::size_t cap);

namespace fixtures {

// k1 (min, rate 5) -a1-> k2a (max, rate 2), k1 -a2 (cost 1/2)-> k2b (max,
// rate 1); both maximizer states exit for free.
Sptg FixtureA();

// State 1 (min, rate 1) moves to state 2 for free on [0,1]; state 2 (max,
// rate 0) exits with cost 1 on [0,0] or cost 0 on [1,1].
Ptg DemoPtg();

// One maximizer state with a free reset self-loop on [0,1] and a free exit
// at [1,1].
Ptg MaximizerResetLoop();

// The four potential matrices of the worked 5-state example, sigma(1) first.
std::vector<PotentialMatrix> DemoPotentials();

}  // namespace fixtures

}  // namespace oneclock
