#include <algorithm>

#include "oneclock/error.h"
#include "oneclock/oracle.h"
#include "test_util.h"

namespace oneclock {
namespace {

using testing::Pts;
using testing::Q;

TEST(ValueIteration, FixtureAMatchesSweep) {
  auto g = fixtures::FixtureA();
  EXPECT_EQ(ValueIterationSptg(g, 1000).values, SolveSptg(g).values);
}

TEST(ValueIteration, SingleMaximizerConvergesQuickly) {
  Sptg g;
  g.AddState(Player::kMax, Q(1));
  g.AddAction(0, kTerminal, ExtCost(0));
  auto vi = ValueIterationSptg(g, 10);
  EXPECT_EQ(vi.values[0], Pts({{Q(0), Q(1)}, {Q(1), Q(0)}}));
  // One round to reach 1 - x, one more to see the fixpoint.
  EXPECT_EQ(vi.iterations, 2u);
}

TEST(ValueIteration, ForcedCycleStaysInfinite) {
  Sptg g;
  g.AddState(Player::kMin, Q(1));
  g.AddAction(0, 0, ExtCost(0));
  auto vi = ValueIterationSptg(g, 10);
  EXPECT_TRUE(vi.values[0].IsConstantInfinity());
  EXPECT_EQ(vi.iterations, 1u);
}

TEST(ValueIteration, CapIsReported) {
  auto g = fixtures::FixtureA();
  try {
    ValueIterationSptg(g, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonConvergence);
  }
}

TEST(ValueIteration, RoundsBoundedBySegments) {
  // `iterations` includes the final round that confirms the fixpoint.
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    RandomOptions o;
    o.states = 1 + seed % 4;
    o.seed = seed;
    o.infinite_costs = seed % 4 == 0;
    auto g = RandomSptg(o);
    auto vi = ValueIterationSptg(g, 100000);
    std::size_t segments = 0;
    for (const auto& f : SolveSptg(g).values) {
      segments = std::max(segments, f.segments().size());
    }
    ASSERT_LE(vi.iterations - 1, g.num_states() * segments) << "seed " << seed;
  }
}

TEST(Simulate, FixtureAFromK1AtZero) {
  auto g = fixtures::FixtureA();
  auto r = SolveSptg(g);
  auto play = SimulateSptg(g, r.strategy, 0, Q(0));
  EXPECT_EQ(play.cost, ExtCost(Q(3, 2)));
  EXPECT_TRUE(play.terminal);
  ASSERT_FALSE(play.steps.empty());
  EXPECT_EQ(play.steps.front().action, 1);
  EXPECT_EQ(play.steps.front().delay, Q(0));
}

TEST(Simulate, TerminalStartIsEmpty) {
  auto g = fixtures::FixtureA();
  auto r = SolveSptg(g);
  auto play = SimulateSptg(g, r.strategy, kTerminal, Q(0));
  EXPECT_TRUE(play.steps.empty());
  EXPECT_EQ(play.cost, ExtCost(0));
}

TEST(Simulate, WaitingRunsIntoTheActionAtOne) {
  Sptg g;
  g.AddState(Player::kMax, Q(3));
  g.AddAction(0, kTerminal, ExtCost(1));
  TimedStrategyProfile p;
  p.cells = {{{Q(0), Q(1), true, false, kWait}, {Q(1), Q(1), true, true, 0}}};
  auto play = SimulateSptg(g, p, 0, Q(1, 3));
  EXPECT_EQ(play.cost, ExtCost(3));
  EXPECT_TRUE(play.terminal);
}

TEST(Simulate, RevisitIsInfinite) {
  Sptg g;
  g.AddState(Player::kMax, Q(1));
  g.AddAction(0, 0, ExtCost(1));
  TimedStrategyProfile p;
  p.cells = {{{Q(0), Q(1), true, true, 0}}};
  auto play = SimulateSptg(g, p, 0, Q(0));
  EXPECT_TRUE(play.cost.is_infinite());
  EXPECT_FALSE(play.terminal);
}

TEST(CheckEquilibrium, FixtureAPasses) {
  auto g = fixtures::FixtureA();
  auto rep = CheckEquilibrium(g, SolveSptg(g), 50);
  EXPECT_TRUE(rep.ok());
  EXPECT_GE(rep.probes, 50u);
}

TEST(CheckEquilibrium, CorruptedCellIsIdentified) {
  auto g = fixtures::FixtureA();
  auto r = SolveSptg(g);
  r.strategy.cells[0][0].label = 0;  // a1 instead of a2 on [0, 1/2)
  auto rep = CheckEquilibrium(g, r, 10);
  ASSERT_FALSE(rep.ok());
  bool found = false;
  for (const auto& f : rep.failures) {
    if (f.state == 0 && f.cell == 0) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(CheckEquilibrium, NoEventGamesHaveOneCertificatePerState) {
  Sptg g;
  g.AddState(Player::kMax, Q(1));
  g.AddState(Player::kMin, Q(2));
  g.AddAction(0, kTerminal, ExtCost(0));
  g.AddAction(1, 0, ExtCost(1));
  auto r = SolveSptg(g);
  ASSERT_EQ(r.stats.event_points, 0u);
  auto rep = CheckEquilibrium(g, r, 10);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.certificates, g.num_states());
}

TEST(CheckEquilibrium, RandomInstances) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomOptions o;
    o.states = 1 + seed % 4;
    o.seed = seed;
    o.infinite_costs = seed % 5 == 0;
    auto g = RandomSptg(o);
    auto rep = CheckEquilibrium(g, SolveSptg(g), 50);
    ASSERT_TRUE(rep.ok()) << "seed " << seed << ": " << rep.failures[0].detail;
  }
}

TEST(Random, DeterministicAndWellFormed) {
  RandomOptions o;
  o.states = 4;
  o.seed = 42;
  auto a = RandomPtg(o);
  auto b = RandomPtg(o);
  ASSERT_EQ(a.num_actions(), b.num_actions());
  for (std::size_t j = 0; j < a.num_actions(); ++j) {
    EXPECT_EQ(a.action(j).interval, b.action(j).interval);
    EXPECT_EQ(a.action(j).cost, b.action(j).cost);
    EXPECT_EQ(a.action(j).target, b.action(j).target);
  }
  auto s = RandomSptg(o);
  EXPECT_NO_THROW(s.Validate());
  o.resets = false;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    o.seed = seed;
    auto g = RandomPtg(o);
    EXPECT_NO_THROW(g.Validate());
    EXPECT_FALSE(g.HasResets());
  }
}

}  // namespace
}  // namespace oneclock
