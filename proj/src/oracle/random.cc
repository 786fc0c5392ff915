#include <algorithm>
#include <random>
#include <set>

#include "oneclock/oracle.h"

namespace oneclock {

namespace {

// Draws with plain modulo so a seed means the same game on every platform.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::size_t operator()(std::size_t bound) { return rng_() % bound; }
  bool Chance(std::size_t one_in) { return (*this)(one_in) == 0; }

 private:
  std::mt19937_64 rng_;
};

Player RandomOwner(Draw& draw) {
  return draw(2) == 0 ? Player::kMin : Player::kMax;
}

// A destination among the n states plus the terminal.
int RandomTarget(Draw& draw, std::size_t n) {
  std::size_t t = draw(n + 1);
  return t == n ? kTerminal : static_cast<int>(t);
}

ExtCost RandomCost(Draw& draw, bool infinite) {
  if (infinite && draw.Chance(6)) return ExtCost::Infinity();
  return ExtCost(static_cast<long>(draw(5)));
}

}  // namespace

PricedGame<ExtCost> RandomPricedGame(const RandomOptions& o) {
  Draw draw(o.seed);
  PricedGame<ExtCost> g;
  for (std::size_t k = 0; k < o.states; ++k) g.AddState(RandomOwner(draw));
  for (std::size_t k = 0; k < o.states; ++k) {
    std::size_t count = 1 + draw(o.max_actions);
    for (std::size_t a = 0; a < count; ++a) {
      g.AddAction(static_cast<int>(k), RandomTarget(draw, o.states),
                  RandomCost(draw, o.infinite_costs));
    }
  }
  return g;
}

Sptg RandomSptg(const RandomOptions& o) {
  Draw draw(o.seed);
  Sptg g;
  for (std::size_t k = 0; k < o.states; ++k) {
    std::size_t rates = o.layered ? 20 : 5;
    g.AddState(RandomOwner(draw), Rational(static_cast<long>(draw(rates))));
  }
  for (std::size_t k = 0; k < o.states; ++k) {
    std::size_t count = 1 + draw(o.max_actions);
    for (std::size_t a = 0; a < count; ++a) {
      int target = RandomTarget(draw, o.states);
      if (o.layered && target != kTerminal) {
        std::size_t later = o.states - k;  // choices k+1..n-1 and bot
        std::size_t t = k + 1 + draw(later);
        target = t == o.states ? kTerminal : static_cast<int>(t);
      }
      g.AddAction(static_cast<int>(k), target,
                  RandomCost(draw, o.infinite_costs));
    }
    if (o.layered) {
      g.AddAction(static_cast<int>(k), kTerminal,
                  ExtCost(static_cast<long>(draw(10))));
    }
  }
  return g;
}

Ptg RandomPtg(const RandomOptions& o) {
  Draw draw(o.seed);
  Ptg g;
  for (std::size_t k = 0; k < o.states; ++k) {
    Rational rate = o.reachability ? Rational(1)
                                   : Rational(static_cast<long>(draw(5)));
    g.AddState(RandomOwner(draw), rate);
  }
  // Up to three positive endpoints out of {1/2, 1, 3/2, 2, 3}.
  const std::vector<Rational> pool = {Rational(1, 2), Rational(1),
                                      Rational(3, 2), Rational(2),
                                      Rational(3)};
  std::set<Rational> picked;
  std::size_t wanted = 1 + draw(3);
  while (picked.size() < wanted) picked.insert(pool[draw(pool.size())]);
  std::vector<Rational> points = {Rational()};
  points.insert(points.end(), picked.begin(), picked.end());
  const Rational horizon = points.back();

  std::size_t resets = 0;
  for (std::size_t k = 0; k < o.states; ++k) {
    std::size_t count = 1 + draw(o.max_actions);
    for (std::size_t a = 0; a < count; ++a) {
      std::size_t i = draw(points.size());
      std::size_t j = draw(points.size());
      if (j < i) std::swap(i, j);
      Interval iv{points[i], points[j], true, true};
      if (i != j) {
        iv.lo_closed = draw(2) == 0;
        iv.hi_closed = draw(2) == 0;
      }
      int target = RandomTarget(draw, o.states);
      bool reset = false;
      if (o.resets && target != kTerminal && resets < o.states &&
          draw.Chance(4)) {
        reset = true;
        ++resets;
      }
      ExtCost cost = o.reachability ? ExtCost::Zero()
                                    : RandomCost(draw, o.infinite_costs);
      g.AddAction(static_cast<int>(k), target, cost, iv, reset);
    }
  }
  // Every state gets something to do at the horizon.
  for (std::size_t k = 0; k < o.states; ++k) {
    bool ok = false;
    for (int j : g.actions_of(static_cast<int>(k))) {
      ok = ok || g.action(j).interval.Contains(horizon);
    }
    if (ok) continue;
    Rational lo = points[draw(points.size())];
    ExtCost cost = o.reachability ? ExtCost::Zero()
                                  : ExtCost(static_cast<long>(draw(5)));
    g.AddAction(static_cast<int>(k), kTerminal, cost,
                {lo, horizon, draw(2) == 0 || lo == horizon, true});
  }
  return g;
}

std::size_t ProfileBound(const Sptg& game, std::size_t cap) {
  std::size_t product = 1, twelve = 1;
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    product = std::min(cap, product * (game.core.actions_of(static_cast<int>(k)).size() + 1));
    twelve = std::min(cap, twelve * 12);
  }
  return std::min(product, twelve);
}

}  // namespace oneclock
