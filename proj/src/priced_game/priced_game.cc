#include "oneclock/priced_game.h"

#include <algorithm>
#include <queue>
#include <string>
#include <tuple>

#include "oneclock/error.h"

namespace oneclock {

namespace {

// Iteration guard for the local-search solvers; the theoretical bound is the
// number of profiles, which is astronomically larger for realistic games.
constexpr std::size_t kMaxRounds = 10'000'000;

template <class C>
Valuation<C> Normalized(C payoff, std::size_t hops) {
  if (payoff.is_infinite()) return {CostTraits<C>::Infinity(), kInfiniteHops};
  return {std::move(payoff), hops};
}

template <class C>
Valuation<C> Through(const PricedGame<C>& game, int j,
                     const ProfileEvaluation<C>& eval) {
  const auto& a = game.action(j);
  if (a.target == kTerminal) return Normalized<C>(a.cost, 1);
  const auto& next = eval.valuations[a.target];
  if (next.is_infinite()) return {CostTraits<C>::Infinity(), kInfiniteHops};
  return Normalized<C>(a.cost + next.payoff, next.hops + 1);
}

// Picks one switch per state: strongly improving first, then lowest index.
std::vector<int> OnePerState(const std::vector<Switch>& switches,
                             const std::vector<int>& source_of) {
  std::vector<int> chosen;
  std::vector<std::pair<int, Switch>> best;  // (state, switch)
  for (const auto& s : switches) {
    int k = source_of[s.action];
    auto it = std::find_if(best.begin(), best.end(),
                           [k](const auto& e) { return e.first == k; });
    if (it == best.end()) {
      best.emplace_back(k, s);
    } else if ((s.strong && !it->second.strong) ||
               (s.strong == it->second.strong &&
                s.action < it->second.action)) {
      it->second = s;
    }
  }
  std::sort(best.begin(), best.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [k, s] : best) chosen.push_back(s.action);
  return chosen;
}

template <class C>
std::vector<int> SourceOf(const PricedGame<C>& game) {
  std::vector<int> src(game.num_actions());
  for (std::size_t j = 0; j < game.num_actions(); ++j) {
    src[j] = game.action(static_cast<int>(j)).source;
  }
  return src;
}

template <class C>
std::size_t CountChanges(const StrategyProfile& a, const StrategyProfile& b) {
  std::size_t n = 0;
  for (std::size_t k = 0; k < a.size(); ++k) n += a[k] != b[k];
  return n;
}

}  // namespace

template <class C>
int PricedGame<C>::AddState(Player owner) {
  owners_.push_back(owner);
  by_state_.emplace_back();
  return static_cast<int>(owners_.size()) - 1;
}

template <class C>
int PricedGame<C>::AddAction(int source, int target, C cost,
                             std::optional<Rational> waiting_rate) {
  if (source < 0 || static_cast<std::size_t>(source) >= owners_.size()) {
    throw ValidationError("action source " + std::to_string(source) +
                              " is not a state",
                          ErrorCode::kDanglingReference);
  }
  int j = static_cast<int>(actions_.size());
  actions_.push_back({source, target, std::move(cost), std::move(waiting_rate)});
  by_state_[source].push_back(j);
  return j;
}

template <class C>
void PricedGame<C>::Validate() const {
  for (std::size_t k = 0; k < owners_.size(); ++k) {
    if (by_state_[k].empty()) {
      throw ValidationError("state " + std::to_string(k) + " has no action",
                            ErrorCode::kMissingAction);
    }
  }
  for (std::size_t j = 0; j < actions_.size(); ++j) {
    const auto& a = actions_[j];
    if (a.target != kTerminal &&
        (a.target < 0 || static_cast<std::size_t>(a.target) >= owners_.size())) {
      throw ValidationError("action " + std::to_string(j) +
                                " has an unknown destination",
                            ErrorCode::kDanglingReference);
    }
    if (a.cost < CostTraits<C>::Zero()) {
      throw ValidationError("action " + std::to_string(j) +
                                " has negative cost " + a.cost.ToString(),
                            ErrorCode::kNegativeCost);
    }
  }
}

template <class C>
void ValidateProfile(const PricedGame<C>& game,
                     const StrategyProfile& profile) {
  if (profile.size() != game.num_states()) {
    throw ValidationError("profile size does not match the game");
  }
  for (std::size_t k = 0; k < profile.size(); ++k) {
    int j = profile[k];
    if (j < 0 || static_cast<std::size_t>(j) >= game.num_actions() ||
        game.action(j).source != static_cast<int>(k)) {
      throw ValidationError("profile picks an action outside A_" +
                            std::to_string(k));
    }
  }
}

template <class C>
ProfileEvaluation<C> EvaluateProfile(const PricedGame<C>& game,
                                     const StrategyProfile& profile) {
  const std::size_t n = game.num_states();
  ProfileEvaluation<C> out;
  out.valuations.assign(n, {CostTraits<C>::Infinity(), kInfiniteHops});
  out.waiting_rates.assign(n, Rational());
  enum : char { kUnseen, kOnPath, kDone };
  std::vector<char> state(n, kUnseen);
  std::vector<int> path;
  for (std::size_t start = 0; start < n; ++start) {
    if (state[start] != kUnseen) continue;
    path.clear();
    int k = static_cast<int>(start);
    bool cycle = false;
    while (true) {
      state[k] = kOnPath;
      path.push_back(k);
      int next = game.action(profile[k]).target;
      if (next == kTerminal || state[next] == kDone) break;
      if (state[next] == kOnPath) {
        cycle = true;
        break;
      }
      k = next;
    }
    if (cycle) {
      for (int p : path) state[p] = kDone;  // valuations stay infinite
      continue;
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      int s = *it;
      const auto& a = game.action(profile[s]);
      if (a.target == kTerminal) {
        out.valuations[s] = Normalized<C>(a.cost, 1);
        out.waiting_rates[s] = a.waiting_rate.value_or(Rational());
      } else {
        const auto& nv = out.valuations[a.target];
        out.valuations[s] =
            nv.is_infinite()
                ? Valuation<C>{CostTraits<C>::Infinity(), kInfiniteHops}
                : Normalized<C>(a.cost + nv.payoff, nv.hops + 1);
        out.waiting_rates[s] = out.waiting_rates[a.target];
      }
      if (out.valuations[s].is_infinite()) out.waiting_rates[s] = Rational();
      state[s] = kDone;
    }
  }
  return out;
}

template <class C>
std::vector<Switch> ImprovingSwitches(const PricedGame<C>& game,
                                      const StrategyProfile& profile,
                                      const ProfileEvaluation<C>& eval,
                                      Player player) {
  std::vector<Switch> out;
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    if (game.owner(static_cast<int>(k)) != player) continue;
    const auto& current = eval.valuations[k];
    for (int j : game.actions_of(static_cast<int>(k))) {
      if (j == profile[k]) continue;
      Valuation<C> cand = Through(game, j, eval);
      bool improving = player == Player::kMin ? cand < current : cand > current;
      if (!improving) continue;
      bool strong = player == Player::kMin ? cand.payoff < current.payoff
                                           : cand.payoff > current.payoff;
      out.push_back({j, strong});
    }
  }
  return out;
}

template <class C>
std::vector<Switch> ImprovingSwitches(const PricedGame<C>& game,
                                      const StrategyProfile& profile,
                                      Player player) {
  return ImprovingSwitches(game, profile, EvaluateProfile(game, profile),
                           player);
}

template <class C>
StrategyProfile ApplySwitches(const PricedGame<C>& game,
                              StrategyProfile profile,
                              std::span<const int> actions) {
  std::vector<char> touched(game.num_states(), 0);
  for (int j : actions) {
    if (j < 0 || static_cast<std::size_t>(j) >= game.num_actions()) {
      throw ValidationError("switch names an unknown action");
    }
    int k = game.action(j).source;
    if (touched[k]) {
      throw ValidationError("switch set has two actions in state " +
                            std::to_string(k));
    }
    touched[k] = 1;
    profile[k] = j;
  }
  return profile;
}

template <class C>
GameSolution<C> ExtendedDijkstra(const PricedGame<C>& game) {
  game.Validate();
  const std::size_t n = game.num_states();
  GameSolution<C> sol;
  sol.values.assign(n, CostTraits<C>::Infinity());
  sol.profile.choice.assign(n, -1);

  std::vector<std::vector<int>> incoming(n);
  std::vector<int> to_terminal;
  for (std::size_t j = 0; j < game.num_actions(); ++j) {
    int t = game.action(static_cast<int>(j)).target;
    if (t == kTerminal) {
      to_terminal.push_back(static_cast<int>(j));
    } else {
      incoming[t].push_back(static_cast<int>(j));
    }
  }

  struct Entry {
    C value;
    int state;
    int action;
    bool operator>(const Entry& o) const {
      if (auto c = value <=> o.value; c != 0) return c > 0;
      return std::tie(state, action) > std::tie(o.state, o.action);
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;

  std::vector<char> settled(n, 0);
  std::vector<std::size_t> remaining(n);
  std::vector<int> best_action(n, -1);
  std::vector<C> best_value(n, CostTraits<C>::Zero());
  for (std::size_t k = 0; k < n; ++k) {
    remaining[k] = game.actions_of(static_cast<int>(k)).size();
  }

  auto relax = [&](int j, const C& dest_value) {
    const auto& a = game.action(j);
    int k = a.source;
    if (settled[k]) return;
    C cand = a.cost + dest_value;
    if (game.owner(k) == Player::kMin) {
      if (cand.is_finite()) queue.push({std::move(cand), k, j});
      return;
    }
    // Maximizer: the choice is fixed once every successor is known.
    if (best_action[k] < 0 || cand > best_value[k] ||
        (cand == best_value[k] && j < best_action[k])) {
      best_action[k] = j;
      best_value[k] = cand;
    }
    if (--remaining[k] == 0 && best_value[k].is_finite()) {
      queue.push({best_value[k], k, best_action[k]});
    }
  };

  for (int j : to_terminal) relax(j, CostTraits<C>::Zero());
  while (!queue.empty()) {
    Entry e = queue.top();
    queue.pop();
    if (settled[e.state]) continue;
    settled[e.state] = 1;
    sol.values[e.state] = e.value;
    sol.profile[e.state] = e.action;
    for (int j : incoming[e.state]) relax(j, e.value);
  }

  // Unsettled states have value infinity. Pick choices that keep it so: the
  // minimizer has nothing better, the maximizer takes a non-settling action.
  for (std::size_t k = 0; k < n; ++k) {
    if (settled[k]) continue;
    const auto& acts = game.actions_of(static_cast<int>(k));
    int pick = acts.front();
    if (game.owner(static_cast<int>(k)) == Player::kMax) {
      for (int j : acts) {
        const auto& a = game.action(j);
        bool dead = a.cost.is_infinite() ||
                    (a.target != kTerminal && !settled[a.target]);
        if (dead) {
          pick = j;
          break;
        }
      }
    }
    sol.profile[k] = pick;
  }
  return sol;
}

template <class C>
StrategyProfile MaximizerBestResponse(const PricedGame<C>& game,
                                      const StrategyProfile& profile) {
  PricedGame<C> fixed;
  std::vector<int> original;
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    fixed.AddState(game.owner(static_cast<int>(k)));
  }
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    for (int j : game.actions_of(static_cast<int>(k))) {
      if (game.owner(static_cast<int>(k)) == Player::kMin && j != profile[k]) {
        continue;
      }
      const auto& a = game.action(j);
      fixed.AddAction(a.source, a.target, a.cost, a.waiting_rate);
      original.push_back(j);
    }
  }
  auto br = ExtendedDijkstra(fixed);
  StrategyProfile out = profile;
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    if (game.owner(static_cast<int>(k)) == Player::kMax) {
      out[k] = original[br.profile[k]];
    }
  }
  return out;
}

template <class C>
GameSolution<C> StrategyIteration(const PricedGame<C>& game,
                                  StrategyProfile start) {
  game.Validate();
  ValidateProfile(game, start);
  const auto source_of = SourceOf(game);
  GameSolution<C> sol;
  StrategyProfile sigma = std::move(start);

  auto maximizer_phase = [&] {
    StrategyProfile br = MaximizerBestResponse(game, sigma);
    sol.switches += CountChanges<C>(sigma, br);
    sigma = std::move(br);
    for (std::size_t round = 0;; ++round) {
      if (round > kMaxRounds) {
        throw Error(ErrorCode::kBudgetExceeded, "maximizer loop did not settle");
      }
      auto set = OnePerState(ImprovingSwitches(game, sigma, Player::kMax),
                             source_of);
      if (set.empty()) break;
      sigma = ApplySwitches(game, std::move(sigma), set);
      sol.switches += set.size();
    }
  };

  maximizer_phase();
  while (true) {
    if (sol.iterations > kMaxRounds) {
      throw Error(ErrorCode::kBudgetExceeded, "strategy iteration budget");
    }
    auto set =
        OnePerState(ImprovingSwitches(game, sigma, Player::kMin), source_of);
    if (set.empty()) break;
    sigma = ApplySwitches(game, std::move(sigma), set);
    sol.switches += set.size();
    ++sol.iterations;
    maximizer_phase();
  }

  auto eval = EvaluateProfile(game, sigma);
  sol.values.reserve(game.num_states());
  for (const auto& v : eval.valuations) sol.values.push_back(v.payoff);
  sol.profile = std::move(sigma);
  return sol;
}

template <class C>
GameSolution<C> SingleSwitchIteration(const PricedGame<C>& game,
                                      StrategyProfile start,
                                      const SwitchHook& hook) {
  game.Validate();
  ValidateProfile(game, start);
  const auto source_of = SourceOf(game);
  GameSolution<C> sol;
  StrategyProfile sigma = std::move(start);

  auto step = [&](Player p) {
    auto set = OnePerState(ImprovingSwitches(game, sigma, p), source_of);
    if (set.empty()) return false;
    int j = set.front();
    StrategyProfile next = sigma;
    next[source_of[j]] = j;
    if (hook) hook(sigma, j, next);
    sigma = std::move(next);
    ++sol.switches;
    return true;
  };

  while (true) {
    if (sol.switches > kMaxRounds) {
      throw Error(ErrorCode::kBudgetExceeded, "single-switch budget");
    }
    while (step(Player::kMax)) {
    }
    if (!step(Player::kMin)) break;
    ++sol.iterations;
  }

  auto eval = EvaluateProfile(game, sigma);
  for (const auto& v : eval.valuations) sol.values.push_back(v.payoff);
  sol.profile = std::move(sigma);
  return sol;
}

#define ONECLOCK_INSTANTIATE(C)                                               \
  template class PricedGame<C>;                                               \
  template void ValidateProfile(const PricedGame<C>&, const StrategyProfile&); \
  template ProfileEvaluation<C> EvaluateProfile(const PricedGame<C>&,         \
                                                const StrategyProfile&);      \
  template std::vector<Switch> ImprovingSwitches(                             \
      const PricedGame<C>&, const StrategyProfile&, Player);                  \
  template std::vector<Switch> ImprovingSwitches(                             \
      const PricedGame<C>&, const StrategyProfile&,                           \
      const ProfileEvaluation<C>&, Player);                                   \
  template StrategyProfile ApplySwitches(const PricedGame<C>&,                \
                                         StrategyProfile,                     \
                                         std::span<const int>);               \
  template GameSolution<C> ExtendedDijkstra(const PricedGame<C>&);            \
  template GameSolution<C> StrategyIteration(const PricedGame<C>&,            \
                                             StrategyProfile);                \
  template GameSolution<C> SingleSwitchIteration(                             \
      const PricedGame<C>&, StrategyProfile, const SwitchHook&);              \
  template StrategyProfile MaximizerBestResponse(const PricedGame<C>&,        \
                                                 const StrategyProfile&);

ONECLOCK_INSTANTIATE(ExtCost)
ONECLOCK_INSTANTIATE(EpsCost)

#undef ONECLOCK_INSTANTIATE

}  // namespace oneclock
