#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "oneclock/cost.h"
#include "oneclock/player.h"
#include "oneclock/rational.h"

namespace oneclock {

// Destination index of the terminal state.
inline constexpr int kTerminal = -1;

template <class C>
struct PricedAction {
  int source = 0;
  int target = kTerminal;
  C cost{};
  // Set only on the synthetic waiting actions of an ε-game; it is the rate of
  // the state the play waits in.
  std::optional<Rational> waiting_rate;
};

// A finite zero-sum game on a graph: the minimizer pays the total cost of the
// path to the terminal state, or infinity if the terminal is never reached.
// C is ExtCost or EpsCost.
template <class C>
class PricedGame {
 public:
  int AddState(Player owner);
  int AddAction(int source, int target, C cost,
                std::optional<Rational> waiting_rate = std::nullopt);

  std::size_t num_states() const { return owners_.size(); }
  std::size_t num_actions() const { return actions_.size(); }
  Player owner(int state) const { return owners_[state]; }
  const PricedAction<C>& action(int j) const { return actions_[j]; }
  const std::vector<int>& actions_of(int state) const {
    return by_state_[state];
  }
  const std::vector<PricedAction<C>>& actions() const { return actions_; }

  // Every state has an action, destinations resolve, costs are >= 0.
  void Validate() const;

 private:
  std::vector<Player> owners_;
  std::vector<PricedAction<C>> actions_;
  std::vector<std::vector<int>> by_state_;
};

// One chosen action per state (both players together).
struct StrategyProfile {
  std::vector<int> choice;

  int operator[](std::size_t k) const { return choice[k]; }
  int& operator[](std::size_t k) { return choice[k]; }
  std::size_t size() const { return choice.size(); }

  friend bool operator==(const StrategyProfile&,
                         const StrategyProfile&) = default;
};

template <class C>
void ValidateProfile(const PricedGame<C>& game, const StrategyProfile& profile);

inline constexpr std::size_t kInfiniteHops =
    std::numeric_limits<std::size_t>::max();

// (payoff, path length), ordered lexicographically. An infinite payoff always
// carries infinite length.
template <class C>
struct Valuation {
  C payoff;
  std::size_t hops = 0;

  bool is_infinite() const { return payoff.is_infinite(); }

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend auto operator<=>(const Valuation& a, const Valuation& b) {
    if (auto c = a.payoff <=> b.payoff; c != 0) return c;
    return a.hops <=> b.hops;
  }
};

template <class C>
struct ProfileEvaluation {
  std::vector<Valuation<C>> valuations;
  // Rate of the waiting action that ends the path, 0 if it ends otherwise.
  std::vector<Rational> waiting_rates;
};

template <class C>
ProfileEvaluation<C> EvaluateProfile(const PricedGame<C>& game,
                                     const StrategyProfile& profile);

struct Switch {
  int action = 0;
  bool strong = false;  // improves the payoff itself, not only the length

  friend bool operator==(const Switch&, const Switch&) = default;
};

// All improving switches for `player` with respect to `profile`.
template <class C>
std::vector<Switch> ImprovingSwitches(const PricedGame<C>& game,
                                      const StrategyProfile& profile,
                                      Player player);
template <class C>
std::vector<Switch> ImprovingSwitches(const PricedGame<C>& game,
                                      const StrategyProfile& profile,
                                      const ProfileEvaluation<C>& eval,
                                      Player player);

// profile[B]: at most one action of B per state, else ValidationError.
template <class C>
StrategyProfile ApplySwitches(const PricedGame<C>& game,
                              StrategyProfile profile,
                              std::span<const int> actions);

template <class C>
struct GameSolution {
  std::vector<C> values;
  StrategyProfile profile;
  std::size_t iterations = 0;  // minimizer improving steps
  std::size_t switches = 0;    // actions changed, both players
};

// Dijkstra-style solver. Ties in the queue break on (value, state, action);
// a maximizer state is settled once all of its successors are settled, with
// the lowest-index maximizing action.
template <class C>
GameSolution<C> ExtendedDijkstra(const PricedGame<C>& game);

// Minimizer improving sets (one switch per state, strongly improving first,
// lowest action index) against maximizer best responses. The result admits
// no improving switch for either player.
template <class C>
GameSolution<C> StrategyIteration(const PricedGame<C>& game,
                                  StrategyProfile start);

using SwitchHook = std::function<void(const StrategyProfile& before,
                                      int action,
                                      const StrategyProfile& after)>;

// As StrategyIteration but one switch at a time; the hook sees every switch.
template <class C>
GameSolution<C> SingleSwitchIteration(const PricedGame<C>& game,
                                      StrategyProfile start,
                                      const SwitchHook& hook);

// The maximizer's best response to the minimizer choices in `profile`,
// computed by ExtendedDijkstra on the game with those choices fixed.
template <class C>
StrategyProfile MaximizerBestResponse(const PricedGame<C>& game,
                                      const StrategyProfile& profile);

}  // namespace oneclock
