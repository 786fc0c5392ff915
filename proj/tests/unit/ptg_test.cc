#include <random>

#include "oneclock/error.h"
#include "oneclock/oracle.h"
#include "oneclock/ptg.h"
#include "test_util.h"

namespace oneclock {
namespace {

using testing::Pts;
using testing::Q;

const Interval kWhole{Q(0), Q(1), true, true};
const Interval kEnd{Q(1), Q(1), true, true};

ErrorCode CodeOf(const Ptg& g) {
  try {
    g.Validate();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a validation error";
  return ErrorCode::kDomain;
}

TEST(PtgValidate, ErrorCodes) {
  {
    Ptg g;
    g.AddState(Player::kMin, Q(-1));
    g.AddAction(0, kTerminal, ExtCost(0), kWhole);
    EXPECT_EQ(CodeOf(g), ErrorCode::kNegativeRate);
  }
  {
    Ptg g;
    g.AddState(Player::kMin, Q(1));
    g.AddAction(0, kTerminal, ExtCost(-1), kWhole);
    EXPECT_EQ(CodeOf(g), ErrorCode::kNegativeCost);
  }
  {
    Ptg g;
    g.AddState(Player::kMin, Q(1));
    g.AddAction(0, 3, ExtCost(0), kWhole);
    EXPECT_EQ(CodeOf(g), ErrorCode::kDanglingReference);
  }
  {
    Ptg g;
    g.AddState(Player::kMin, Q(1));
    g.AddAction(0, kTerminal, ExtCost(0), {Q(2), Q(1), true, true});
    EXPECT_EQ(CodeOf(g), ErrorCode::kIntervalOrder);
  }
  {
    Ptg g;
    g.AddState(Player::kMin, Q(1));
    g.AddAction(0, kTerminal, ExtCost(0), kWhole);
    g.AddAction(0, kTerminal, ExtCost(0), {Q(1), Q(1), true, false});
    EXPECT_EQ(CodeOf(g), ErrorCode::kEmptyInterval);
  }
  {
    Ptg g;
    g.AddState(Player::kMin, Q(1));
    g.AddState(Player::kMax, Q(1));
    g.AddAction(0, kTerminal, ExtCost(0), kWhole);
    g.AddAction(1, kTerminal, ExtCost(0), {Q(0), Q(1, 2), true, true});
    EXPECT_EQ(CodeOf(g), ErrorCode::kMissingAction);
  }
  {
    Ptg g;
    g.AddState(Player::kMin, Q(1));
    g.AddAction(0, kTerminal, ExtCost(0), {Q(0), Q(0), true, true});
    EXPECT_THROW(g.Validate(), Error);
  }
}

TEST(EndpointLadder, DescendingWithZero) {
  Ptg g;
  g.AddState(Player::kMin, Q(1));
  g.AddAction(0, kTerminal, ExtCost(0), {Q(1, 2), Q(3), false, true});
  g.AddAction(0, kTerminal, ExtCost(1), {Q(1), Q(1), true, true});
  EXPECT_EQ(EndpointLadder(g), (std::vector<Rational>{Q(3), Q(1), Q(1, 2), Q(0)}));
  EXPECT_EQ(g.Horizon(), Q(3));
}

TEST(BuildMomentGame, DemoPtgAtZero) {
  auto g = fixtures::DemoPtg();
  std::vector<ExtCost> v = {ExtCost(0), ExtCost(0)};
  auto m = BuildMomentGame(g, &v, Q(0));
  // s1: its action and exit; s2: the [0,0] exit and its exit.
  EXPECT_EQ(m.game.num_actions(), 4u);
  auto sol = ExtendedDijkstra(m.game);
  EXPECT_EQ(sol.values[1], ExtCost(1));
  EXPECT_EQ(sol.values[0], ExtCost(0));
}

TEST(BuildMomentGame, OnlyExitWhenNothingIsAvailable) {
  auto g = fixtures::DemoPtg();
  std::vector<ExtCost> v = {ExtCost(7), ExtCost(Q(2, 3))};
  auto m = BuildMomentGame(g, &v, Q(1, 2));
  auto sol = ExtendedDijkstra(m.game);
  EXPECT_EQ(m.game.actions_of(1).size(), 1u);
  EXPECT_EQ(sol.values[1], ExtCost(Q(2, 3)));
  EXPECT_EQ(m.origin[m.game.actions_of(1)[0]], kExitOrigin);
}

TEST(BuildMomentGame, HorizonHasNoExits) {
  auto g = fixtures::DemoPtg();
  auto m = BuildMomentGame(g, nullptr, Q(1));
  EXPECT_EQ(m.game.num_actions(), 2u);
}

TEST(BuildIntervalSptg, ScalesRatesAndRoutesExits) {
  Ptg g;
  g.AddState(Player::kMin, Q(2));
  g.AddState(Player::kMax, Q(1));
  g.AddAction(0, 1, ExtCost(0), {Q(0), Q(3), true, true});
  g.AddAction(1, kTerminal, ExtCost(0), {Q(3), Q(3), true, true});
  auto isp = BuildIntervalSptg(g, {ExtCost(1), ExtCost(2)}, Q(1, 2), Q(1, 3));
  EXPECT_EQ(isp.sptg.rates[0], Q(2, 3));
  EXPECT_EQ(isp.sptg.rates[1], Q(1, 3));
  ASSERT_EQ(isp.max_state, 2);
  EXPECT_EQ(isp.sptg.rates[2], Q(2, 3));
  EXPECT_EQ(isp.sptg.core.owner(2), Player::kMax);
  // s0: frozen action, exit to max. s1: exit to the terminal. max: free exit.
  ASSERT_EQ(isp.sptg.core.num_actions(), 4u);
  EXPECT_EQ(isp.sptg.core.action(1).target, 2);
  EXPECT_EQ(isp.sptg.core.action(1).cost, ExtCost(1));
  EXPECT_EQ(isp.sptg.core.action(2).target, kTerminal);
  EXPECT_EQ(isp.sptg.core.action(2).cost, ExtCost(2));
  EXPECT_EQ(isp.origin, (std::vector<int>{0, kExitOrigin, kExitOrigin, kMaxOrigin}));
  EXPECT_THROW(BuildIntervalSptg(g, {ExtCost(1), ExtCost(2)}, Q(1), Q(0)), Error);
}

TEST(TransformEndpointActions, MinimizerEndExitRoutesThroughMax) {
  Ptg g;
  g.AddState(Player::kMin, Q(1));
  g.AddAction(0, kTerminal, ExtCost(0), kEnd);
  auto t = TransformEndpointActions(g);
  EXPECT_EQ(t.sptg.num_states(), 2u);
  EXPECT_EQ(t.sptg.core.num_actions(), 2u);
  auto r = SolveSptg(t.sptg);
  EXPECT_EQ(r.values[0], Pts({{Q(0), Q(1)}, {Q(1), Q(0)}}));
  EXPECT_EQ(SolvePtg(g).values[0], r.values[0]);
}

TEST(TransformEndpointActions, NoEndActionsLeavesMaxIsolated) {
  Ptg g;
  g.AddState(Player::kMin, Q(1));
  g.AddAction(0, kTerminal, ExtCost(2), kWhole);
  auto t = TransformEndpointActions(g);
  EXPECT_EQ(t.sptg.num_states(), 2u);
  EXPECT_EQ(t.sptg.core.action(0).target, kTerminal);
  EXPECT_EQ(t.origin, (std::vector<int>{0, kMaxOrigin}));
}

TEST(TransformEndpointActions, ParallelActionsKeepOwnersBest) {
  Ptg g;
  g.AddState(Player::kMin, Q(1));
  g.AddState(Player::kMax, Q(1));
  g.AddAction(0, kTerminal, ExtCost(3), kWhole);
  g.AddAction(0, kTerminal, ExtCost(1), kWhole);
  g.AddAction(1, kTerminal, ExtCost(3), kEnd);
  g.AddAction(1, kTerminal, ExtCost(5), kEnd);
  auto t = TransformEndpointActions(g);
  EXPECT_EQ(t.origin, (std::vector<int>{1, 3, kMaxOrigin}));
}

TEST(TransformEndpointActions, EndActionMustExit) {
  Ptg g;
  g.AddState(Player::kMin, Q(1));
  g.AddAction(0, 0, ExtCost(0), kEnd);
  EXPECT_THROW(TransformEndpointActions(g), Error);
}

TEST(SolvePtg, DemoPtg) {
  auto g = fixtures::DemoPtg();
  auto r = SolvePtg(g);
  EXPECT_EQ(r.values[0], PiecewiseLinearFn::Constant(Q(0), Q(1), ExtCost(0)));
  EXPECT_EQ(r.values[1].Eval(Q(0)), ExtCost(1));
  for (auto x : {Q(1, 1000), Q(1, 2), Q(1)}) {
    EXPECT_EQ(r.values[1].Eval(x), ExtCost(0));
  }
  EXPECT_EQ(r.values[1].Eval(Q(0), Side::kRight), ExtCost(0));
  EXPECT_EQ(r.stats.oracle_calls, 1u);
  EXPECT_FALSE(r.exact_strategy);
}

TEST(SolvePtg, DemoPtgEpsilonStrategies) {
  auto g = fixtures::DemoPtg();
  auto r = SolvePtg(g);
  for (auto delta : {Q(1, 10), Q(1, 100)}) {
    auto cells = MaterializeStrategy(r, 0, delta);
    auto play = SimulatePtg(g, {cells}, 0, Q(0));
    ASSERT_TRUE(play.terminal);
    ASSERT_FALSE(play.cost.is_infinite());
    // s1 must wait before moving; the cost is exactly the wait.
    EXPECT_EQ(play.cost, ExtCost(delta));
    EXPECT_GE(play.shifts, 1u);
    EXPECT_LE(play.cost.value(), Q(2) * delta * Q(1) * Rational(static_cast<long>(play.shifts)));
  }
}

TEST(SolvePtg, MaximizerResetLoopIsInfinite) {
  auto g = fixtures::MaximizerResetLoop();
  auto r = SolvePtg(g);
  EXPECT_EQ(r.stats.layers, 2u);
  EXPECT_TRUE(r.values[0].IsConstantInfinity());
  EXPECT_LE(r.stats.oracle_calls, 2 * r.stats.ladder_size);
}

TEST(SolvePtg, ResetFreeIsSingleLayer) {
  auto r = SolvePtg(fixtures::DemoPtg());
  EXPECT_EQ(r.stats.layers, 1u);
  EXPECT_EQ(r.layer_values.size(), 1u);
}

TEST(SolvePtg, UselessMinimizerResetChangesNothing) {
  auto build = [](bool with_reset) {
    Ptg g;
    g.AddState(Player::kMin, Q(1));
    g.AddAction(0, kTerminal, ExtCost(1), {Q(0), Q(2), true, true});
    if (with_reset) {
      g.AddAction(0, 0, ExtCost(5), {Q(0), Q(2), true, true}, true);
    }
    return g;
  };
  auto a = SolvePtg(build(false));
  auto b = SolvePtg(build(true));
  EXPECT_EQ(b.stats.layers, 2u);
  EXPECT_EQ(a.values, b.values);
}

TEST(SolvePtg, MinimizerResetCanPay) {
  // Leaving is cheap only at time 0; resetting late gets back there.
  Ptg g;
  g.AddState(Player::kMin, Q(0));
  g.AddAction(0, kTerminal, ExtCost(0), {Q(0), Q(0), true, true});
  g.AddAction(0, kTerminal, ExtCost(10), {Q(0), Q(1), true, true});
  g.AddAction(0, 0, ExtCost(1), {Q(0), Q(1), true, true}, true);
  auto r = SolvePtg(g);
  EXPECT_EQ(r.values[0].Eval(Q(0)), ExtCost(0));
  EXPECT_EQ(r.values[0].Eval(Q(1, 2)), ExtCost(1));
  EXPECT_EQ(r.values[0].Eval(Q(1)), ExtCost(1));
}

TEST(SolvePtg, UnfoldResetsUsesLayerAbove) {
  Ptg g;
  g.AddState(Player::kMax, Q(1));
  g.AddAction(0, 0, ExtCost(2), kWhole, true);
  g.AddAction(0, kTerminal, ExtCost(0), kEnd);
  auto top = UnfoldResets(g, 1, 1, {ExtCost(0)});
  EXPECT_TRUE(top.action(0).cost.is_infinite());
  EXPECT_FALSE(top.HasResets());
  auto below = UnfoldResets(g, 0, 1, {ExtCost(3)});
  EXPECT_EQ(below.action(0).cost, ExtCost(5));
  EXPECT_EQ(below.action(0).target, kTerminal);
}

// Reset-free games on [0, 1] with only [0,1] and [1,1] intervals.
Ptg RandomUnitGame(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&](std::uint64_t b) { return static_cast<long>(rng() % b); };
  Ptg g;
  const long n = 1 + draw(4);
  for (long k = 0; k < n; ++k) {
    g.AddState(draw(2) ? Player::kMax : Player::kMin, Q(draw(4)));
  }
  for (long k = 0; k < n; ++k) {
    g.AddAction(k, kTerminal, ExtCost(draw(5)), kEnd);
    long extra = draw(3);
    for (long a = 0; a < extra; ++a) {
      long t = draw(n + 1);
      g.AddAction(k, t == n ? kTerminal : static_cast<int>(t), ExtCost(draw(5)),
                  kWhole);
    }
  }
  return g;
}

TEST(SolvePtg, UnitGamesMatchTransformedSptg) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    auto g = RandomUnitGame(seed);
    auto p = SolvePtg(g);
    auto s = SolveSptg(TransformEndpointActions(g).sptg);
    for (std::size_t k = 0; k < g.num_states(); ++k) {
      for (long i = 1; i < 40; ++i) {
        ASSERT_EQ(p.values[k].Eval(Q(i, 40)), s.values[k].Eval(Q(i, 40)))
            << "seed " << seed << " state " << k;
      }
      ASSERT_EQ(p.values[k].Eval(Q(1)), s.values[k].Eval(Q(1)))
          << "seed " << seed;
    }
  }
}

TEST(SolvePtg, LadderPiecesAreContinuousAndExactlyRemapped) {
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    RandomOptions o;
    o.states = 1 + seed % 4;
    o.seed = seed;
    o.resets = seed % 3 == 0;
    auto g = RandomPtg(o);
    auto r = SolvePtg(g);
    ASSERT_LE(r.stats.oracle_calls,
              (r.stats.reset_destinations + 1) * r.stats.ladder_size);
    std::set<Rational> ladder(r.ladder.begin(), r.ladder.end());
    for (const auto& f : r.values) {
      for (std::size_t b = 0; b < f.breakpoints().size(); ++b) {
        if (f.HasJumpAt(b)) ASSERT_TRUE(ladder.count(f.breakpoints()[b]));
      }
    }
    for (const auto& pv : r.provenance) {
      if (pv.layer != 0) continue;
      const Rational w = pv.hi - pv.lo;
      for (long i = 1; i < 8; ++i) {
        Rational x = pv.lo + w * Q(i, 8);
        for (std::size_t k = 0; k < g.num_states(); ++k) {
          ASSERT_EQ(r.values[k].Eval(x), pv.sweep.values[k].Eval((x - pv.lo) / w))
              << "seed " << seed;
        }
      }
    }
  }
}

TEST(SolvePtg, EpsilonStrategiesOnRandomGames) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomOptions o;
    o.states = 1 + seed % 4;
    o.seed = seed;
    o.resets = seed % 2 == 0;
    auto g = RandomPtg(o);
    auto r = SolvePtg(g);
    Rational rmax;
    for (const auto& q : g.rates()) rmax = Max(rmax, q);
    const Rational delta = Q(1, 1000);
    std::vector<TimedStrategyProfile> layers;
    for (std::size_t l = 0; l < r.stats.layers; ++l) {
      layers.push_back(MaterializeStrategy(r, l, delta));
    }
    for (std::size_t k = 0; k < g.num_states(); ++k) {
      for (const auto& x : r.ladder) {
        auto v = r.values[k].Eval(x);
        if (v.is_infinite()) continue;
        auto play = SimulatePtg(g, layers, static_cast<int>(k), x);
        ASSERT_FALSE(play.cost.is_infinite()) << "seed " << seed;
        Rational gap = play.cost.value() - v.value();
        if (gap.sign() < 0) gap = -gap;
        ASSERT_LE(gap, Q(2) * delta * rmax * Rational(static_cast<long>(play.shifts)))
            << "seed " << seed << " state " << k << " at " << x;
      }
    }
  }
}

}  // namespace
}  // namespace oneclock
