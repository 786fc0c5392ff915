#include "oneclock/error.h"
#include "oneclock/oracle.h"

namespace oneclock {

namespace {

// Advances a mixed-radix counter over `states`; false once it wraps.
template <class C>
bool NextChoice(const PricedGame<C>& game, const std::vector<int>& states,
                std::vector<std::size_t>& digit, StrategyProfile& profile) {
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& acts = game.actions_of(states[i]);
    if (++digit[i] < acts.size()) {
      profile[states[i]] = acts[digit[i]];
      return true;
    }
    digit[i] = 0;
    profile[states[i]] = acts[0];
  }
  return false;
}

}  // namespace

template <class C>
std::vector<C> BruteForcePriced(const PricedGame<C>& game,
                                std::size_t budget) {
  game.Validate();
  const std::size_t n = game.num_states();
  std::size_t total = 1;
  std::vector<int> mins, maxs;
  StrategyProfile profile;
  profile.choice.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& acts = game.actions_of(static_cast<int>(k));
    total *= acts.size();
    if (total > budget) {
      throw Error(ErrorCode::kBudgetExceeded,
                  "brute force needs more than " + std::to_string(budget) +
                      " profiles");
    }
    profile[k] = acts[0];
    (game.owner(static_cast<int>(k)) == Player::kMin ? mins : maxs)
        .push_back(static_cast<int>(k));
  }

  std::vector<C> best(n, CostTraits<C>::Zero());
  bool first_max = true;
  std::vector<std::size_t> dmax(maxs.size(), 0);
  do {
    std::vector<C> inner(n, CostTraits<C>::Infinity());
    std::vector<std::size_t> dmin(mins.size(), 0);
    do {
      auto eval = EvaluateProfile(game, profile);
      for (std::size_t k = 0; k < n; ++k) {
        if (eval.valuations[k].payoff < inner[k]) {
          inner[k] = eval.valuations[k].payoff;
        }
      }
    } while (NextChoice(game, mins, dmin, profile));
    for (std::size_t k = 0; k < n; ++k) {
      if (first_max || inner[k] > best[k]) best[k] = inner[k];
    }
    first_max = false;
  } while (NextChoice(game, maxs, dmax, profile));
  return best;
}

template std::vector<ExtCost> BruteForcePriced(const PricedGame<ExtCost>&,
                                               std::size_t);
template std::vector<EpsCost> BruteForcePriced(const PricedGame<EpsCost>&,
                                               std::size_t);

}  // namespace oneclock
