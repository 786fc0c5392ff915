#include "verify.h"

#include <algorithm>
#include <sstream>

#include "oneclock/oracle.h"

namespace oneclock::detail {

namespace {

// Value iteration is a desk-scale oracle; bigger games skip it.
constexpr std::size_t kIterationCap = 5000;
constexpr std::size_t kOracleStates = 12;

CheckDoc Pass(std::string name, std::string detail = "") {
  return {std::move(name), true, std::move(detail)};
}
CheckDoc Fail(std::string name, std::string detail) {
  return {std::move(name), false, std::move(detail)};
}

template <class T>
std::string Join(const std::vector<T>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << xs[i];
  return os.str();
}

CheckDoc Equilibrium(const std::string& name, const Sptg& game,
                     const SweepResult& result) {
  auto rep = CheckEquilibrium(game, result, 20);
  if (rep.ok()) {
    return Pass(name, std::to_string(rep.probes) + " probes, " +
                          std::to_string(rep.certificates) + " certificates");
  }
  const auto& f = rep.failures.front();
  return Fail(name, f.kind + " failure at state " + std::to_string(f.state) +
                        ", time " + f.time.ToString() + ": " + f.detail);
}

}  // namespace

std::vector<CheckDoc> VerifyPriced(const PricedGame<ExtCost>& game,
                                   const GameSolution<ExtCost>& solution) {
  std::vector<CheckDoc> out;
  std::vector<int> first;
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    first.push_back(game.actions_of(static_cast<int>(k)).front());
  }
  auto si = StrategyIteration(game, StrategyProfile{first});
  out.push_back(si.values == solution.values
                    ? Pass("strategy_iteration")
                    : Fail("strategy_iteration", "values " + Join(si.values)));
  try {
    auto bf = BruteForcePriced(game);
    out.push_back(bf == solution.values
                      ? Pass("brute_force")
                      : Fail("brute_force", "values " + Join(bf)));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kBudgetExceeded) throw;
    out.push_back(Pass("brute_force", std::string("skipped: ") + e.what()));
  }
  // Dijkstra's profile is value-optimal but may still admit switches that
  // only shorten plays, so only payoff-improving ones count.
  for (Player p : {Player::kMin, Player::kMax}) {
    std::string name = std::string("no_strong_switch_") +
                       std::string(PlayerName(p));
    std::string found;
    for (const auto& sw : ImprovingSwitches(game, solution.profile, p)) {
      if (sw.strong) {
        found = "action " + std::to_string(sw.action) + " improves the payoff";
        break;
      }
    }
    out.push_back(found.empty() ? Pass(name) : Fail(name, found));
  }
  return out;
}

std::vector<CheckDoc> VerifySptg(const Sptg& game, const SweepResult& result) {
  std::vector<CheckDoc> out;
  out.push_back(Equilibrium("equilibrium", game, result));
  if (game.num_states() <= kOracleStates) {
    try {
      auto vi = ValueIterationSptg(game, kIterationCap);
      out.push_back(vi.values == result.values
                        ? Pass("value_iteration",
                               std::to_string(vi.iterations) + " rounds")
                        : Fail("value_iteration", "functions differ"));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNonConvergence) throw;
      out.push_back(Fail("value_iteration", e.what()));
    }
  } else {
    out.push_back(Pass("value_iteration", "skipped: more than " +
                                              std::to_string(kOracleStates) +
                                              " states"));
  }
  auto inst = SolveSptg(game, {.instrumented = true});
  out.push_back(inst.values == result.values
                    ? Pass("instrumented_sweep")
                    : Fail("instrumented_sweep", "functions differ"));
  out.push_back(inst.stats.potential_violations == 0
                    ? Pass("potential_decrease")
                    : Fail("potential_decrease",
                           std::to_string(inst.stats.potential_violations) +
                               " violations"));
  std::size_t bound = ProfileBound(game, std::size_t(1) << 40);
  bool one_player = true;
  for (std::size_t k = 1; k < game.num_states(); ++k) {
    one_player = one_player && game.core.owner(static_cast<int>(k)) ==
                                   game.core.owner(0);
  }
  if (one_player) {
    bound = std::min(bound, game.num_states() * (game.num_states() + 1));
  }
  out.push_back(result.stats.event_points <= bound
                    ? Pass("event_point_bound")
                    : Fail("event_point_bound",
                           "L = " + std::to_string(result.stats.event_points) +
                               " > " + std::to_string(bound)));
  return out;
}

std::vector<CheckDoc> VerifyPtg(const Ptg& game, const PtgResult& result) {
  std::vector<CheckDoc> out;
  const auto& st = result.stats;
  std::size_t limit = (st.reset_destinations + 1) * st.ladder_size;
  out.push_back(st.oracle_calls <= limit
                    ? Pass("oracle_calls",
                           std::to_string(st.oracle_calls) + " <= " +
                               std::to_string(limit))
                    : Fail("oracle_calls", std::to_string(st.oracle_calls) +
                                               " > " + std::to_string(limit)));
  bool all = true;
  for (const auto& pv : result.provenance) {
    auto c = Equilibrium("interval_equilibrium", pv.sptg.sptg, pv.sweep);
    if (!c.ok) {
      c.detail = "layer " + std::to_string(pv.layer) + " interval [" +
                 pv.lo.ToString() + "," + pv.hi.ToString() + "]: " + c.detail;
      out.push_back(c);
      all = false;
      break;
    }
  }
  if (all) {
    out.push_back(Pass("interval_equilibrium",
                       std::to_string(result.provenance.size()) + " games"));
  }

  // ε-strategies from every ladder point stay within 2·δ·r_max per shift.
  Rational rmax;
  for (const auto& r : game.rates()) rmax = Max(rmax, r);
  const Rational delta(1, 1000);
  std::vector<TimedStrategyProfile> layers;
  for (std::size_t l = 0; l < st.layers; ++l) {
    layers.push_back(MaterializeStrategy(result, l, delta));
  }
  std::string bad;
  for (std::size_t k = 0; k < game.num_states() && bad.empty(); ++k) {
    for (const auto& x : result.ladder) {
      auto v = result.values[k].Eval(x);
      auto play = SimulatePtg(game, layers, static_cast<int>(k), x);
      bool ok;
      if (v.is_infinite() || play.cost.is_infinite()) {
        ok = v.is_infinite() == play.cost.is_infinite();
      } else {
        Rational gap = play.cost.value() - v.value();
        if (gap.sign() < 0) gap = -gap;
        ok = gap <= Rational(2) * delta * rmax *
                        Rational(static_cast<long>(play.shifts));
      }
      if (!ok) {
        bad = "state " + std::to_string(k) + " at " + x.ToString() +
              ": play costs " + play.cost.ToString() + ", value " +
              v.ToString();
        break;
      }
    }
  }
  out.push_back(bad.empty() ? Pass("epsilon_strategy", "delta 1/1000")
                            : Fail("epsilon_strategy", bad));
  return out;
}

}  // namespace oneclock::detail
