#include <set>
#include <sstream>

#include "oneclock/error.h"
#include "oneclock/oracle.h"

namespace oneclock {

namespace {

std::size_t CellOf(const TimedStrategyProfile& s, int k, const Rational& x) {
  const auto& cells = s.cells[k];
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].Contains(x)) return i;
  }
  return cells.size();
}

}  // namespace

EquilibriumReport CheckEquilibrium(const Sptg& game, const SweepResult& result,
                                   std::size_t samples) {
  EquilibriumReport report;
  const int n = static_cast<int>(game.num_states());
  const int m = static_cast<int>(game.num_actions());
  const Rational one(1);

  // (c) cells against the recorded profiles.
  for (const auto& step : result.trace) {
    Rational mid = (step.lo + step.hi) / Rational(2);
    for (int k = 0; k < n; ++k) {
      int want = step.sigma[k] >= m ? kWait : step.sigma[k];
      std::size_t c = CellOf(result.strategy, k, step.lo);
      std::size_t c_mid = CellOf(result.strategy, k, mid);
      for (std::size_t idx : {c, c_mid}) {
        if (idx == result.strategy.cells[k].size() ||
            result.strategy.cells[k][idx].label != want) {
          report.failures.push_back(
              {"cell", k, idx == c ? step.lo : mid, idx,
               "cell label differs from the profile recorded on [" +
                   step.lo.ToString() + "," + step.hi.ToString() + ")"});
          break;
        }
      }
    }
  }
  for (int k = 0; k < n; ++k) {
    std::size_t c = CellOf(result.strategy, k, one);
    if (c == result.strategy.cells[k].size() ||
        result.strategy.cells[k][c].label != result.profile_at_one[k]) {
      report.failures.push_back(
          {"cell", k, one, c, "cell at time 1 differs from the core profile"});
    }
  }

  // (b) no improving switch in any recorded ε-game.
  for (const auto& step : result.trace) {
    auto eps = BuildEpsGame(game, step.values_at_hi);
    auto eval = EvaluateProfile(eps, step.sigma);
    for (Player p : {Player::kMin, Player::kMax}) {
      for (const auto& s : ImprovingSwitches(eps, step.sigma, eval, p)) {
        int k = eps.action(s.action).source;
        report.failures.push_back(
            {"switch", k, step.hi, CellOf(result.strategy, k, step.lo),
             "action " + std::to_string(s.action) + " improves for " +
                 std::string(PlayerName(p)) + " in the ε-game at " +
                 step.hi.ToString()});
      }
    }
    report.certificates += static_cast<std::size_t>(n);
  }
  for (Player p : {Player::kMin, Player::kMax}) {
    for (const auto& s :
         ImprovingSwitches(game.core, result.profile_at_one, p)) {
      int k = game.core.action(s.action).source;
      report.failures.push_back(
          {"switch", k, one, CellOf(result.strategy, k, one),
           "action " + std::to_string(s.action) + " improves at time 1"});
    }
  }

  // (a) simulated plays against the value functions.
  for (int k = 0; k < n; ++k) {
    std::set<Rational> times;
    for (const auto& c : result.strategy.cells[k]) {
      times.insert(c.lo);
      times.insert(c.hi);
      times.insert((c.lo + c.hi) / Rational(2));
    }
    for (std::size_t i = 0; i <= samples; ++i) {
      times.insert(Rational(static_cast<long>(i), static_cast<long>(
                                                      samples ? samples : 1)));
    }
    for (const auto& t : times) {
      if (t > one) continue;
      ++report.probes;
      ExtCost want = result.values[k].Eval(t);
      ExtCost got;
      std::string detail;
      try {
        got = SimulateSptg(game, result.strategy, k, t).cost;
      } catch (const Error& e) {
        detail = e.what();
      }
      if (!detail.empty() || got != want) {
        if (detail.empty()) {
          detail = "simulated cost " + got.ToString() + ", value " +
                   want.ToString();
        }
        report.failures.push_back(
            {"simulation", k, t, CellOf(result.strategy, k, t), detail});
      }
    }
  }
  return report;
}

}  // namespace oneclock
