#include "oneclock/sptg.h"

#include <algorithm>
#include <chrono>
#include <set>
#include <string>

#include "oneclock/error.h"
#include "oneclock/potential.h"

namespace oneclock {

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

GameSolution<EpsCost> SolveEpsGame(const PricedGame<EpsCost>& g,
                                   const StrategyProfile& seed,
                                   const SweepOptions& options,
                                   const std::vector<Rational>& ladder,
                                   std::size_t& violations) {
  if (!options.instrumented) {
    auto dijkstra = ExtendedDijkstra(g);
    auto normalized = StrategyIteration(g, dijkstra.profile);
    normalized.switches += dijkstra.switches;
    return normalized;
  }
  auto hook = [&](const StrategyProfile& before, int,
                  const StrategyProfile& after) {
    if (!PotentialLess(ComputePotential(g, after, ladder),
                       ComputePotential(g, before, ladder))) {
      ++violations;
    }
  };
  return SingleSwitchIteration(g, seed, hook);
}

}  // namespace

int Sptg::AddState(Player owner, Rational rate) {
  rates.push_back(std::move(rate));
  return core.AddState(owner);
}

void Sptg::Validate() const {
  if (rates.size() != core.num_states()) {
    throw ValidationError("one rate per state is required");
  }
  for (std::size_t k = 0; k < rates.size(); ++k) {
    if (rates[k].sign() < 0) {
      throw ValidationError("state " + std::to_string(k) +
                                " has negative rate " + rates[k].ToString(),
                            ErrorCode::kNegativeRate);
    }
  }
  core.Validate();
}

const StrategyCell* TimedStrategyProfile::CellAt(int state,
                                                 const Rational& x) const {
  for (const auto& c : cells[state]) {
    if (c.Contains(x)) return &c;
  }
  return nullptr;
}

PricedGame<EpsCost> BuildEpsGame(const Sptg& game,
                                 const std::vector<ExtCost>& v_at_x) {
  PricedGame<EpsCost> g;
  const std::size_t n = game.num_states();
  for (std::size_t k = 0; k < n; ++k) g.AddState(game.core.owner(static_cast<int>(k)));
  for (const auto& a : game.core.actions()) {
    g.AddAction(a.source, a.target, EpsCost(a.cost));
  }
  for (std::size_t k = 0; k < n; ++k) {
    g.AddAction(static_cast<int>(k), kTerminal,
                EpsCost(v_at_x[k], game.rates[k]), game.rates[k]);
  }
  return g;
}

GameSolution<ExtCost> SolveAtTimeOne(const Sptg& game) {
  game.Validate();
  auto dijkstra = ExtendedDijkstra(game.core);
  return StrategyIteration(game.core, dijkstra.profile);
}

EventLine ActionLine(const PricedGame<EpsCost>& eps_game, int action,
                     const std::vector<ExtCost>& a,
                     const std::vector<Rational>& b) {
  const auto& act = eps_game.action(action);
  const ExtCost& c = act.cost.base();
  if (act.target == kTerminal) return {c, act.cost.eps()};
  return {c + a[act.target], b[act.target]};
}

Rational NextEventPoint(const PricedGame<EpsCost>& eps_game,
                        const Rational& x, const std::vector<ExtCost>& a,
                        const std::vector<Rational>& b,
                        const StrategyProfile& sigma) {
  // Lines in t = x - x''; find the smallest crossing t in (0, x].
  std::optional<Rational> best;
  for (std::size_t k = 0; k < eps_game.num_states(); ++k) {
    if (a[k].is_infinite()) continue;
    EventLine mine = ActionLine(eps_game, sigma[k], a, b);
    for (int j : eps_game.actions_of(static_cast<int>(k))) {
      if (j == sigma[k]) continue;
      EventLine other = ActionLine(eps_game, j, a, b);
      if (other.intercept.is_infinite() || mine.intercept.is_infinite()) {
        continue;
      }
      if (other.intercept == mine.intercept) continue;
      if (other.slope == mine.slope) continue;
      Rational t = (other.intercept.value() - mine.intercept.value()) /
                   (mine.slope - other.slope);
      if (t.sign() <= 0 || t > x) continue;
      if (!best || t < *best) best = t;
    }
  }
  return best ? x - *best : Rational();
}

TimedStrategyProfile AssembleStrategy(const Sptg& game,
                                      const std::vector<SweepStep>& trace,
                                      const StrategyProfile& profile_at_one) {
  const int m = static_cast<int>(game.num_actions());
  TimedStrategyProfile out;
  out.cells.resize(game.num_states());
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    auto& cells = out.cells[k];
    // The trace runs right to left.
    for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
      int j = it->sigma[k];
      int label = j >= m ? kWait : j;
      if (!cells.empty() && cells.back().label == label &&
          cells.back().hi == it->lo) {
        cells.back().hi = it->hi;
      } else {
        cells.push_back({it->lo, it->hi, true, false, label});
      }
    }
    cells.push_back({Rational(1), Rational(1), true, true, profile_at_one[k]});
  }
  return out;
}

SweepResult SolveSptg(const Sptg& game, const SweepOptions& options) {
  const auto start = Clock::now();
  game.Validate();
  const std::size_t n = game.num_states();
  SweepResult result;

  auto at_one = SolveAtTimeOne(game);
  result.values_at_one = at_one.values;
  result.profile_at_one = at_one.profile;
  result.stats.switch_count += at_one.switches;

  const auto ladder = RateLadder(game.rates);
  std::vector<ExtCost> v = at_one.values;
  // Per state, segments collected right to left: (lo, start value, slope).
  struct Piece {
    Rational lo;
    ExtCost start;
    Rational slope;
  };
  std::vector<std::vector<Piece>> pieces(n);
  StrategyProfile seed = at_one.profile;

  Rational x(1);
  while (x.sign() > 0) {
    const auto step_start = Clock::now();
    auto eps_game = BuildEpsGame(game, v);
    auto sol = SolveEpsGame(eps_game, seed, options, ladder,
                            result.stats.potential_violations);
    result.stats.switch_count += sol.switches;

    std::vector<ExtCost> a(n);
    std::vector<Rational> b(n);
    for (std::size_t k = 0; k < n; ++k) {
      a[k] = sol.values[k].base();
      b[k] = sol.values[k].eps();
      if (a[k] != v[k]) {
        throw Error(ErrorCode::kVerification,
                    "ε-game base value differs from v(x) at state " +
                        std::to_string(k));
      }
    }
    Rational next = NextEventPoint(eps_game, x, a, b, sol.profile);
    Rational width = x - next;
    for (std::size_t k = 0; k < n; ++k) {
      if (a[k].is_infinite()) {
        pieces[k].push_back({next, a[k], Rational()});
      } else {
        pieces[k].push_back({next, ExtCost(a[k].value() + b[k] * width), -b[k]});
      }
    }
    result.trace.push_back({next, x, v, b, sol.profile});
    for (std::size_t k = 0; k < n; ++k) v[k] = pieces[k].back().start;
    seed = sol.profile;
    x = next;
    ++result.stats.sweep_steps;
    result.stats.step_seconds.push_back(SecondsSince(step_start));
  }

  std::set<Rational> kinks;
  result.values.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Rational> breaks;
    std::vector<PiecewiseLinearFn::Segment> segments;
    for (auto it = pieces[k].rbegin(); it != pieces[k].rend(); ++it) {
      breaks.push_back(it->lo);
      segments.push_back({it->start, it->slope});
    }
    breaks.push_back(Rational(1));
    result.values.push_back(
        PiecewiseLinearFn::Continuous(std::move(breaks), std::move(segments)));
    for (const auto& p : result.values.back().InteriorBreakpoints()) {
      kinks.insert(p);
    }
  }
  result.stats.event_points = kinks.size();
  result.strategy = AssembleStrategy(game, result.trace, result.profile_at_one);
  result.stats.wall_seconds = SecondsSince(start);
  return result;
}

}  // namespace oneclock
