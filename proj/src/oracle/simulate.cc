#include <set>
#include <string>
#include <tuple>

#include "oneclock/error.h"
#include "oneclock/oracle.h"

namespace oneclock {

namespace {

std::size_t CellIndex(const std::vector<StrategyCell>& cells,
                      const Rational& x) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].Contains(x)) return i;
  }
  throw ValidationError("strategy is undefined at time " + x.ToString());
}

// Shared play loop. `act` performs action j from (state, time, layer) and
// returns false when the play ends.
template <class Rates, class Take>
Play Run(const std::vector<TimedStrategyProfile>& layers, const Rates& rates,
         int state, Rational time, Take act) {
  Play play;
  if (state == kTerminal) {
    play.terminal = true;
    return play;
  }
  std::set<std::tuple<int, Rational, std::size_t>> seen;
  std::size_t layer = 0;
  while (true) {
    if (!seen.emplace(state, time, layer).second) {
      play.cost = ExtCost::Infinity();
      return play;
    }
    const auto& cells = layers[layer].cells[state];
    std::size_t i = CellIndex(cells, time);
    Rational start = time;
    while (cells[i].label == kWait) {
      if (cells[i].shifted) ++play.shifts;
      if (++i == cells.size()) {
        throw ValidationError("strategy of state " + std::to_string(state) +
                              " waits past the horizon");
      }
      if (cells[i].label != kWait && !cells[i].lo_closed) {
        throw ValidationError("strategy of state " + std::to_string(state) +
                              " waits into an open cell at " +
                              cells[i].lo.ToString());
      }
      time = cells[i].lo;
    }
    if (cells[i].shifted) ++play.shifts;
    Rational delay = time - start;
    play.cost += ExtCost(delay * rates(state));
    int j = cells[i].label;
    play.steps.push_back({state, time, j, delay, layer});
    if (!act(j, state, time, layer, play)) return play;
  }
}

}  // namespace

Play SimulateSptg(const Sptg& game, const TimedStrategyProfile& strategy,
                  int state, const Rational& time) {
  std::vector<TimedStrategyProfile> layers = {strategy};
  auto rates = [&](int k) -> const Rational& { return game.rates[k]; };
  auto act = [&](int j, int& k, Rational&, std::size_t&, Play& play) {
    const auto& a = game.core.action(j);
    if (a.source != k) {
      throw ValidationError("strategy of state " + std::to_string(k) +
                            " names a foreign action");
    }
    play.cost += a.cost;
    k = a.target;
    if (k == kTerminal) {
      play.terminal = true;
      return false;
    }
    return true;
  };
  return Run(layers, rates, state, time, act);
}

Play SimulatePtg(const Ptg& game,
                 const std::vector<TimedStrategyProfile>& layers, int state,
                 const Rational& time) {
  auto rates = [&](int k) -> const Rational& { return game.rate(k); };
  auto act = [&](int j, int& k, Rational& t, std::size_t& layer, Play& play) {
    const auto& a = game.action(j);
    if (a.source != k) {
      throw ValidationError("strategy of state " + std::to_string(k) +
                            " names a foreign action");
    }
    if (!a.interval.Contains(t)) {
      throw ValidationError("action " + std::to_string(j) +
                            " is not available at " + t.ToString());
    }
    play.cost += a.cost;
    if (a.target == kTerminal) {
      play.terminal = true;
      return false;
    }
    k = a.target;
    if (a.reset) {
      if (layer + 1 == layers.size()) {
        play.cost = ExtCost::Infinity();
        return false;
      }
      ++layer;
      t = Rational();
    }
    return true;
  };
  return Run(layers, rates, state, time, act);
}

}  // namespace oneclock
