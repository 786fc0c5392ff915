#include "oneclock/error.h"
#include "oneclock/oracle.h"
#include "oneclock/sptg.h"
#include "test_util.h"

namespace oneclock {
namespace {

using testing::Pts;
using testing::Q;

TEST(BuildEpsGame, WaitingActionsCarryValueAndRate) {
  Sptg g;
  g.AddState(Player::kMin, Q(1));
  g.AddState(Player::kMax, Q(2));
  g.AddAction(0, 1, ExtCost(3));
  g.AddAction(1, kTerminal, ExtCost(0));
  auto e = BuildEpsGame(g, {ExtCost(Q(1, 2)), ExtCost::Infinity()});
  ASSERT_EQ(e.num_actions(), 4u);
  EXPECT_EQ(e.action(0).cost, EpsCost(ExtCost(3)));
  EXPECT_EQ(e.action(0).cost.eps(), Q(0));
  EXPECT_EQ(e.action(2).cost, EpsCost(ExtCost(Q(1, 2)), Q(1)));
  EXPECT_EQ(e.action(2).target, kTerminal);
  EXPECT_EQ(e.action(3).cost, EpsCost::Infinity());
  EXPECT_EQ(*e.action(3).waiting_rate, Q(2));
}

TEST(SolveAtTimeOne, SpecExamples) {
  Sptg a;
  a.AddState(Player::kMax, Q(1));
  a.AddAction(0, kTerminal, ExtCost(0));
  EXPECT_EQ(SolveAtTimeOne(a).values[0], ExtCost(0));

  Sptg b;
  b.AddState(Player::kMin, Q(1));
  b.AddAction(0, kTerminal, ExtCost(Q(1, 2)));
  b.AddAction(0, kTerminal, ExtCost(2));
  EXPECT_EQ(SolveAtTimeOne(b).values[0], ExtCost(Q(1, 2)));

  Sptg c;
  c.AddState(Player::kMin, Q(1));
  c.AddAction(0, 0, ExtCost(1));
  EXPECT_TRUE(SolveAtTimeOne(c).values[0].is_infinite());
}

TEST(NextEventPoint, FixtureAStartsAtOneHalf) {
  auto g = fixtures::FixtureA();
  auto at_one = SolveAtTimeOne(g);
  auto eps = BuildEpsGame(g, at_one.values);
  auto sol = StrategyIteration(eps, ExtendedDijkstra(eps).profile);
  std::vector<ExtCost> a;
  std::vector<Rational> b;
  for (const auto& v : sol.values) {
    a.push_back(v.base());
    b.push_back(v.eps());
  }
  EXPECT_EQ(NextEventPoint(eps, Q(1), a, b, sol.profile), Q(1, 2));
}

TEST(NextEventPoint, NoCrossingGivesZero) {
  Sptg g;
  g.AddState(Player::kMin, Q(1));
  g.AddAction(0, kTerminal, ExtCost(Q(1, 2)));
  auto eps = BuildEpsGame(g, {ExtCost(Q(1, 2))});
  auto sol = ExtendedDijkstra(eps);
  std::vector<ExtCost> a = {sol.values[0].base()};
  std::vector<Rational> b = {sol.values[0].eps()};
  EXPECT_EQ(NextEventPoint(eps, Q(1), a, b, sol.profile), Q(0));

  // Parallel distinct lines never meet.
  Sptg p;
  p.AddState(Player::kMin, Q(0));
  p.AddAction(0, kTerminal, ExtCost(1));
  p.AddAction(0, kTerminal, ExtCost(2));
  auto pe = BuildEpsGame(p, {ExtCost(1)});
  auto ps = StrategyIteration(pe, ExtendedDijkstra(pe).profile);
  EXPECT_EQ(NextEventPoint(pe, Q(1), {ps.values[0].base()},
                           {ps.values[0].eps()}, ps.profile),
            Q(0));
}

TEST(SolveSptg, FixtureA) {
  auto r = SolveSptg(fixtures::FixtureA());
  EXPECT_EQ(r.values[0], Pts({{Q(0), Q(3, 2)}, {Q(1, 2), Q(1)}, {Q(1), Q(0)}}));
  EXPECT_EQ(r.values[1], Pts({{Q(0), Q(2)}, {Q(1), Q(0)}}));
  EXPECT_EQ(r.values[2], Pts({{Q(0), Q(1)}, {Q(1), Q(0)}}));
  EXPECT_EQ(r.stats.event_points, 1u);
  EXPECT_EQ(r.values[0].InteriorBreakpoints(), std::vector<Rational>{Q(1, 2)});
  // a2's line from k1 is 1/2 + v_k2b = 3/2 - x.
  EXPECT_EQ(AddConstant(r.values[2], ExtCost(Q(1, 2))),
            Pts({{Q(0), Q(3, 2)}, {Q(1), Q(1, 2)}}));
}

TEST(SolveSptg, FixtureAStrategyCells) {
  auto r = SolveSptg(fixtures::FixtureA());
  const auto& k1 = r.strategy.cells[0];
  ASSERT_EQ(k1.size(), 3u);
  EXPECT_EQ(k1[0], (StrategyCell{Q(0), Q(1, 2), true, false, 1}));
  EXPECT_EQ(k1[1], (StrategyCell{Q(1, 2), Q(1), true, false, 0}));
  EXPECT_EQ(k1[2], (StrategyCell{Q(1), Q(1), true, true, 0}));
  // Maximizers wait, then exit at 1.
  EXPECT_EQ(r.strategy.cells[1][0].label, kWait);
  EXPECT_EQ(r.strategy.cells[1].back().label, 2);
}

TEST(SolveSptg, FreeGameIsZero) {
  Sptg g;
  for (int k = 0; k < 3; ++k) {
    g.AddState(k % 2 ? Player::kMax : Player::kMin, Q(0));
    g.AddAction(k, kTerminal, ExtCost(0));
  }
  auto r = SolveSptg(g);
  for (const auto& f : r.values) {
    EXPECT_EQ(f, PiecewiseLinearFn::Constant(Q(0), Q(1), ExtCost(0)));
  }
  EXPECT_EQ(r.stats.event_points, 0u);
}

TEST(SolveSptg, SingleMaximizerWaitsToTheEnd) {
  Sptg g;
  g.AddState(Player::kMax, Q(1));
  g.AddAction(0, kTerminal, ExtCost(0));
  auto r = SolveSptg(g);
  EXPECT_EQ(r.values[0], Pts({{Q(0), Q(1)}, {Q(1), Q(0)}}));
  EXPECT_EQ(r.stats.event_points, 0u);
  ASSERT_EQ(r.strategy.cells[0].size(), 2u);
}

TEST(SolveSptg, InfiniteStatesAreConstant) {
  Sptg g;
  g.AddState(Player::kMax, Q(2));
  g.AddState(Player::kMin, Q(1));
  g.AddAction(0, 0, ExtCost(0));
  g.AddAction(0, 1, ExtCost(1));
  g.AddAction(1, 0, ExtCost(0));
  auto r = SolveSptg(g);
  EXPECT_TRUE(r.values[0].IsConstantInfinity());
  EXPECT_TRUE(r.values[1].IsConstantInfinity());
}

TEST(SolveSptg, MalformedGameRejected) {
  Sptg g;
  g.AddState(Player::kMin, Q(-1));
  g.AddAction(0, kTerminal, ExtCost(0));
  EXPECT_THROW(SolveSptg(g), Error);
  Sptg h;
  h.AddState(Player::kMin, Q(1));
  EXPECT_THROW(SolveSptg(h), Error);
}

TEST(SolveSptg, InstrumentedPathAgrees) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    RandomOptions o;
    o.states = 1 + seed % 4;
    o.seed = seed;
    o.infinite_costs = seed % 4 == 0;
    auto g = RandomSptg(o);
    auto plain = SolveSptg(g);
    auto inst = SolveSptg(g, {.instrumented = true});
    ASSERT_EQ(plain.values, inst.values) << "seed " << seed;
    ASSERT_EQ(inst.stats.potential_violations, 0u) << "seed " << seed;
  }
}

TEST(SolveSptg, SweepIsMonotoneAndContinuous) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    RandomOptions o;
    o.states = 1 + seed % 4;
    o.seed = seed;
    auto r = SolveSptg(RandomSptg(o));
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      ASSERT_LT(r.trace[i].lo, r.trace[i].hi);
      if (i) ASSERT_EQ(r.trace[i].hi, r.trace[i - 1].lo);
    }
    ASSERT_EQ(r.trace.back().lo, Q(0));
    for (const auto& f : r.values) ASSERT_TRUE(f.IsContinuous());
    ASSERT_LE(r.stats.event_points, r.stats.sweep_steps);
  }
}

}  // namespace
}  // namespace oneclock
