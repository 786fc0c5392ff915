#include "oneclock/oracle.h"

namespace oneclock::fixtures {

Sptg FixtureA() {
  Sptg g;
  int k1 = g.AddState(Player::kMin, Rational(5));
  int k2a = g.AddState(Player::kMax, Rational(2));
  int k2b = g.AddState(Player::kMax, Rational(1));
  g.AddAction(k1, k2a, ExtCost(0));             // a1
  g.AddAction(k1, k2b, ExtCost(Rational(1, 2)));  // a2
  g.AddAction(k2a, kTerminal, ExtCost(0));      // b1
  g.AddAction(k2b, kTerminal, ExtCost(0));      // b2
  return g;
}

Ptg DemoPtg() {
  Ptg g;
  int s1 = g.AddState(Player::kMin, Rational(1));
  int s2 = g.AddState(Player::kMax, Rational(0));
  g.AddAction(s1, s2, ExtCost(0), {Rational(0), Rational(1), true, true});
  g.AddAction(s2, kTerminal, ExtCost(1), {Rational(0), Rational(0), true, true});
  g.AddAction(s2, kTerminal, ExtCost(0), {Rational(1), Rational(1), true, true});
  return g;
}

Ptg MaximizerResetLoop() {
  Ptg g;
  int k = g.AddState(Player::kMax, Rational(1));
  g.AddAction(k, k, ExtCost(0), {Rational(0), Rational(1), true, true},
              /*reset=*/true);
  g.AddAction(k, kTerminal, ExtCost(0), {Rational(1), Rational(1), true, true});
  return g;
}

std::vector<PotentialMatrix> DemoPotentials() {
  // The example's four rates are only given graphically; ranks suffice.
  const std::vector<Rational> ladder = {0, 1, 2, 3};
  return {
      PotentialMatrix::FromRows({{0, 0, 0, 0},
                                 {-1, 0, 0, 0},
                                 {-1, 0, 0, 0},
                                 {1, 0, 0, 0},
                                 {0, 0, 0, 0}},
                                ladder),
      PotentialMatrix::FromRows({{-1, 0, -1, 1},
                                 {0, 0, -1, 0},
                                 {0, 0, 1, 0},
                                 {0, 0, 0, 0},
                                 {0, 0, 0, 0}},
                                ladder),
      PotentialMatrix::FromRows({{-1, 1, 0, 1},
                                 {-1, -1, 0, 0},
                                 {0, 0, 0, 0},
                                 {0, 0, 0, 0},
                                 {0, 0, 0, 0}},
                                ladder),
      PotentialMatrix::FromRows({{-1, 0, -1, 1},
                                 {-1, 0, 0, 1},
                                 {0, 0, 0, 0},
                                 {0, 0, 0, 0},
                                 {0, 0, 0, 0}},
                                ladder),
  };
}

}  // namespace oneclock::fixtures
