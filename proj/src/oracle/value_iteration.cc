#include <string>

#include "oneclock/error.h"
#include "oneclock/oracle.h"

namespace oneclock {

ValueIterationResult ValueIterationSptg(const Sptg& game, std::size_t cap) {
  game.Validate();
  const std::size_t n = game.num_states();
  const Rational zero, one(1);
  ValueIterationResult out;
  out.values.assign(n, PiecewiseLinearFn::Constant(zero, one,
                                                   ExtCost::Infinity()));
  const auto terminal = PiecewiseLinearFn::Constant(zero, one, ExtCost::Zero());
  for (std::size_t round = 0; round < cap; ++round) {
    std::vector<PiecewiseLinearFn> next;
    next.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<PiecewiseLinearFn> options;
      for (int j : game.core.actions_of(static_cast<int>(k))) {
        const auto& a = game.core.action(j);
        const auto& target =
            a.target == kTerminal ? terminal : out.values[a.target];
        options.push_back(AddConstant(target, a.cost));
      }
      Player p = game.core.owner(static_cast<int>(k));
      auto best = p == Player::kMin ? MinEnvelope(options)
                                    : MaxEnvelope(options);
      next.push_back(WaitClosure(best, game.rates[k], p));
    }
    ++out.iterations;
    if (next == out.values) return out;
    out.values = std::move(next);
  }
  throw Error(ErrorCode::kNonConvergence,
              "value iteration reached no fixpoint within " +
                  std::to_string(cap) + " rounds");
}

}  // namespace oneclock
