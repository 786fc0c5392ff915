#include "oneclock/ptg.h"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <tuple>

#include "oneclock/error.h"

namespace oneclock {

namespace {

struct LayerSolution {
  std::vector<PiecewiseLinearFn> values;
  std::vector<std::vector<StrategyCell>> cells;
  std::vector<std::vector<int>> end_action;  // [i][k]
};

int LabelOf(const std::vector<int>& origin, int action) {
  if (action == kWait) return kWait;
  int o = origin[action];
  return o >= 0 ? o : kWait;
}

void AppendCell(std::vector<StrategyCell>& cells, StrategyCell c) {
  if (!cells.empty()) {
    auto& b = cells.back();
    if (b.label == c.label && b.hi == c.lo && !b.hi_closed && c.lo_closed &&
        b.lo < b.hi && c.lo < c.hi) {
      b.hi = c.hi;
      b.hi_closed = c.hi_closed;
      return;
    }
  }
  cells.push_back(std::move(c));
}

LayerSolution SolveLayer(const Ptg& g, const std::vector<Rational>& ladder,
                         const SweepOptions& options, std::size_t layer,
                         PtgResult& out) {
  const std::size_t n = g.num_states();
  const std::size_t d = ladder.size();
  LayerSolution sol;
  sol.end_action.assign(d + 1, std::vector<int>(n, kWait));

  auto top = BuildMomentGame(g, nullptr, ladder[0]);
  auto top_sol = ExtendedDijkstra(top.game);
  std::vector<ExtCost> v_hi = top_sol.values;

  // Collected right to left, one entry per ladder interval.
  struct Piece {
    std::vector<Rational> breaks;  // ascending, first is M_i
    std::vector<PiecewiseLinearFn::Segment> segments;
    std::vector<ExtCost> points;   // point value per break
    std::vector<StrategyCell> cells;  // point cell at M_i, then interior
  };
  std::vector<std::vector<Piece>> pieces(n);

  for (std::size_t i = 1; i < d; ++i) {
    const Rational& hi = ladder[i - 1];
    const Rational& lo = ladder[i];
    const Rational width = hi - lo;
    const Rational x = (hi + lo) / Rational(2);

    auto left_limit = BuildMomentGame(g, &v_hi, x);
    auto left_sol = ExtendedDijkstra(left_limit.game);
    auto isp = BuildIntervalSptg(g, left_sol.values, x, width);
    auto sweep = SolveSptg(isp.sptg, options);
    ++out.stats.oracle_calls;
    out.stats.event_points += sweep.stats.event_points;
    out.stats.sweep_steps += sweep.stats.sweep_steps;
    out.stats.switch_count += sweep.stats.switch_count;

    std::vector<ExtCost> v_star0(n);
    for (std::size_t k = 0; k < n; ++k) {
      v_star0[k] = sweep.values[k].Eval(Rational());
    }
    auto at_lo = BuildMomentGame(g, &v_star0, lo);
    auto lo_sol = ExtendedDijkstra(at_lo.game);

    for (std::size_t k = 0; k < n; ++k) {
      Piece p;
      const auto& f = sweep.values[k];
      for (std::size_t s = 0; s < f.segments().size(); ++s) {
        p.breaks.push_back(lo + f.breakpoints()[s] * width);
        p.segments.push_back(
            {f.segments()[s].start, f.segments()[s].slope / width});
        p.points.push_back(s == 0 ? lo_sol.values[k] : f.point_values()[s]);
      }
      p.cells.push_back(
          {lo, lo, true, true, LabelOf(at_lo.origin, lo_sol.profile[k])});
      std::vector<StrategyCell> interior;
      for (const auto& c : sweep.strategy.cells[k]) {
        if (c.lo == c.hi) continue;  // the point {1} of the SPTG
        StrategyCell mapped{lo + c.lo * width, lo + c.hi * width,
                            c.lo.sign() != 0, false,
                            LabelOf(isp.origin, c.label)};
        AppendCell(interior, mapped);
      }
      p.cells.insert(p.cells.end(), interior.begin(), interior.end());
      pieces[k].push_back(std::move(p));
      // Exiting at the right end realizes the left limit there, so the
      // moment game's own choice says what to do just before M_{i-1}.
      int end = sweep.profile_at_one[k];
      sol.end_action[i + 1][k] =
          isp.origin[end] == kExitOrigin
              ? LabelOf(left_limit.origin, left_sol.profile[k])
              : LabelOf(isp.origin, end);
    }
    out.provenance.push_back(
        {layer, i + 1, lo, hi, std::move(isp), std::move(sweep)});
    v_hi = lo_sol.values;
  }

  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Rational> breaks;
    std::vector<PiecewiseLinearFn::Segment> segments;
    std::vector<ExtCost> points;
    std::vector<StrategyCell> cells;
    for (auto it = pieces[k].rbegin(); it != pieces[k].rend(); ++it) {
      breaks.insert(breaks.end(), it->breaks.begin(), it->breaks.end());
      segments.insert(segments.end(), it->segments.begin(),
                      it->segments.end());
      points.insert(points.end(), it->points.begin(), it->points.end());
      cells.insert(cells.end(), it->cells.begin(), it->cells.end());
    }
    breaks.push_back(ladder[0]);
    points.push_back(top_sol.values[k]);
    cells.push_back({ladder[0], ladder[0], true, true,
                     LabelOf(top.origin, top_sol.profile[k])});
    sol.values.emplace_back(std::move(breaks), std::move(segments),
                            std::move(points));
    sol.cells.push_back(std::move(cells));
  }
  return sol;
}

}  // namespace

std::string Interval::ToString() const {
  return std::string(lo_closed ? "[" : "(") + lo.ToString() + "," +
         hi.ToString() + (hi_closed ? "]" : ")");
}

int Ptg::AddState(Player owner, Rational rate) {
  owners_.push_back(owner);
  rates_.push_back(std::move(rate));
  by_state_.emplace_back();
  return static_cast<int>(owners_.size()) - 1;
}

int Ptg::AddAction(int source, int target, ExtCost cost, Interval interval,
                   bool reset) {
  if (source < 0 || static_cast<std::size_t>(source) >= owners_.size()) {
    throw ValidationError("action source " + std::to_string(source) +
                              " is not a state",
                          ErrorCode::kDanglingReference);
  }
  int j = static_cast<int>(actions_.size());
  actions_.push_back(
      {source, target, std::move(cost), std::move(interval), reset});
  by_state_[source].push_back(j);
  return j;
}

Rational Ptg::Horizon() const {
  Rational m;
  for (const auto& a : actions_) m = Max(m, a.interval.hi);
  return m;
}

bool Ptg::HasResets() const {
  return std::any_of(actions_.begin(), actions_.end(),
                     [](const PtgAction& a) { return a.reset; });
}

std::size_t Ptg::ResetDestinations() const {
  std::set<int> dest;
  for (const auto& a : actions_) {
    if (a.reset && a.target != kTerminal) dest.insert(a.target);
  }
  return dest.size();
}

void Ptg::Validate() const {
  const std::size_t n = owners_.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (rates_[k].sign() < 0) {
      throw ValidationError("state " + std::to_string(k) +
                                " has negative rate " + rates_[k].ToString(),
                            ErrorCode::kNegativeRate);
    }
  }
  for (std::size_t j = 0; j < actions_.size(); ++j) {
    const auto& a = actions_[j];
    std::string name = "action " + std::to_string(j);
    if (a.target != kTerminal &&
        (a.target < 0 || static_cast<std::size_t>(a.target) >= n)) {
      throw ValidationError(name + " has an unknown destination",
                            ErrorCode::kDanglingReference);
    }
    if (a.cost < ExtCost::Zero()) {
      throw ValidationError(name + " has negative cost " + a.cost.ToString(),
                            ErrorCode::kNegativeCost);
    }
    if (a.interval.lo.sign() < 0) {
      throw ValidationError(name + " has an interval below 0",
                            ErrorCode::kIntervalOrder);
    }
    if (a.interval.hi < a.interval.lo) {
      throw ValidationError(name + " has interval " + a.interval.ToString() +
                                " with lo > hi",
                            ErrorCode::kIntervalOrder);
    }
    if (a.interval.IsEmpty()) {
      throw ValidationError(name + " has empty interval " +
                                a.interval.ToString(),
                            ErrorCode::kEmptyInterval);
    }
  }
  Rational m = Horizon();
  if (m.sign() == 0) {
    throw ValidationError("the horizon M is 0; no interval has positive length");
  }
  for (std::size_t k = 0; k < n; ++k) {
    bool ok = false;
    for (int j : by_state_[k]) ok = ok || actions_[j].interval.Contains(m);
    if (!ok) {
      throw ValidationError("state " + std::to_string(k) +
                                " has no action available at M = " +
                                m.ToString(),
                            ErrorCode::kMissingAction);
    }
  }
}

std::vector<Rational> EndpointLadder(const Ptg& game) {
  std::set<Rational> pts = {Rational()};
  for (const auto& a : game.actions()) {
    pts.insert(a.interval.lo);
    pts.insert(a.interval.hi);
  }
  return std::vector<Rational>(pts.rbegin(), pts.rend());
}

Ptg UnfoldResets(const Ptg& game, std::size_t layer, std::size_t top,
                 const std::vector<ExtCost>& v0_next) {
  Ptg out;
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    out.AddState(game.owner(static_cast<int>(k)), game.rate(static_cast<int>(k)));
  }
  for (const auto& a : game.actions()) {
    if (!a.reset || a.target == kTerminal) {
      out.AddAction(a.source, a.target, a.cost, a.interval);
    } else if (layer == top) {
      out.AddAction(a.source, kTerminal, ExtCost::Infinity(), a.interval);
    } else {
      out.AddAction(a.source, kTerminal, a.cost + v0_next[a.target],
                    a.interval);
    }
  }
  return out;
}

MomentGame BuildMomentGame(const Ptg& game, const std::vector<ExtCost>* v,
                           const Rational& x) {
  MomentGame mg;
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    mg.game.AddState(game.owner(static_cast<int>(k)));
  }
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    for (int j : game.actions_of(static_cast<int>(k))) {
      const auto& a = game.action(j);
      if (!a.interval.Contains(x)) continue;
      mg.game.AddAction(a.source, a.target, a.cost);
      mg.origin.push_back(j);
    }
    if (v) {
      mg.game.AddAction(static_cast<int>(k), kTerminal, (*v)[k]);
      mg.origin.push_back(kExitOrigin);
    }
  }
  return mg;
}

IntervalSptg BuildIntervalSptg(const Ptg& game,
                               const std::vector<ExtCost>& v_right,
                               const Rational& x, const Rational& width) {
  if (width.sign() <= 0) {
    throw ValidationError("interval width must be positive, got " +
                          width.ToString());
  }
  IntervalSptg out;
  const std::size_t n = game.num_states();
  Rational top_rate;
  for (std::size_t k = 0; k < n; ++k) {
    const Rational& r = game.rate(static_cast<int>(k));
    out.sptg.AddState(game.owner(static_cast<int>(k)), r * width);
    top_rate = Max(top_rate, r * width);
  }
  out.max_state = out.sptg.AddState(Player::kMax, top_rate);
  for (std::size_t k = 0; k < n; ++k) {
    for (int j : game.actions_of(static_cast<int>(k))) {
      const auto& a = game.action(j);
      if (!a.interval.Contains(x)) continue;
      out.sptg.AddAction(a.source, a.target, a.cost);
      out.origin.push_back(j);
    }
    int exit_target = game.owner(static_cast<int>(k)) == Player::kMin
                          ? out.max_state
                          : kTerminal;
    out.sptg.AddAction(static_cast<int>(k), exit_target, v_right[k]);
    out.origin.push_back(kExitOrigin);
  }
  out.sptg.AddAction(out.max_state, kTerminal, ExtCost::Zero());
  out.origin.push_back(kMaxOrigin);
  return out;
}

IntervalSptg TransformEndpointActions(const Ptg& game) {
  const Interval whole{Rational(0), Rational(1), true, true};
  const Interval end{Rational(1), Rational(1), true, true};
  // (source, target, at_end) -> best action index
  std::map<std::tuple<int, int, bool>, int> best;
  for (std::size_t j = 0; j < game.num_actions(); ++j) {
    const auto& a = game.action(static_cast<int>(j));
    if (a.reset) {
      throw ValidationError("endpoint transform does not accept resets");
    }
    bool at_end = a.interval == end;
    if (!at_end && a.interval != whole) {
      throw ValidationError("action " + std::to_string(j) + " has interval " +
                                a.interval.ToString() +
                                ", expected [0,1] or [1,1]",
                            ErrorCode::kIntervalOrder);
    }
    if (at_end && a.target != kTerminal) {
      throw ValidationError("[1,1] action " + std::to_string(j) +
                            " must target the terminal");
    }
    auto key = std::make_tuple(a.source, a.target, at_end);
    auto it = best.find(key);
    if (it == best.end()) {
      best.emplace(key, static_cast<int>(j));
      continue;
    }
    const auto& cur = game.action(it->second);
    bool better = game.owner(a.source) == Player::kMin ? a.cost < cur.cost
                                                       : a.cost > cur.cost;
    if (better) it->second = static_cast<int>(j);
  }
  std::vector<int> kept;
  for (const auto& [key, j] : best) kept.push_back(j);
  std::sort(kept.begin(), kept.end());

  IntervalSptg out;
  Rational top_rate;
  for (std::size_t k = 0; k < game.num_states(); ++k) {
    const Rational& r = game.rate(static_cast<int>(k));
    out.sptg.AddState(game.owner(static_cast<int>(k)), r);
    top_rate = Max(top_rate, r);
  }
  out.max_state = out.sptg.AddState(Player::kMax, top_rate);
  for (int j : kept) {
    const auto& a = game.action(j);
    bool route = a.interval == end && game.owner(a.source) == Player::kMin;
    out.sptg.AddAction(a.source, route ? out.max_state : a.target, a.cost);
    out.origin.push_back(j);
  }
  out.sptg.AddAction(out.max_state, kTerminal, ExtCost::Zero());
  out.origin.push_back(kMaxOrigin);
  return out;
}

PtgResult SolvePtg(const Ptg& game, const SweepOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  game.Validate();
  PtgResult out;
  out.ladder = EndpointLadder(game);
  const std::size_t top = game.ResetDestinations();
  out.stats.reset_destinations = top;
  out.stats.ladder_size = out.ladder.size();
  out.stats.layers = top + 1;
  out.layer_values.resize(top + 1);
  out.strategy.layers.resize(top + 1);
  out.strategy.end_action.resize(top + 1);

  std::vector<ExtCost> v0_next(game.num_states(), ExtCost::Infinity());
  for (std::size_t layer = top + 1; layer-- > 0;) {
    Ptg g = UnfoldResets(game, layer, top, v0_next);
    auto sol = SolveLayer(g, out.ladder, options, layer, out);
    for (std::size_t k = 0; k < game.num_states(); ++k) {
      v0_next[k] = sol.values[k].Eval(Rational());
    }
    out.layer_values[layer] = std::move(sol.values);
    out.strategy.layers[layer].cells = std::move(sol.cells);
    out.strategy.end_action[layer] = std::move(sol.end_action);
  }
  out.values = out.layer_values[0];
  out.stats.wall_seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  return out;
}

TimedStrategyProfile MaterializeStrategy(const PtgResult& result,
                                         std::size_t layer,
                                         const Rational& delta) {
  if (delta.sign() <= 0) throw DomainError("shift δ must be positive");
  const auto& src = result.strategy.layers.at(layer);
  const auto& ends = result.strategy.end_action.at(layer);
  const auto& ladder = result.ladder;
  TimedStrategyProfile out;
  out.cells.resize(src.cells.size());
  for (std::size_t k = 0; k < src.cells.size(); ++k) {
    const auto& in = src.cells[k];
    auto& cells = out.cells[k];
    std::size_t pos = 0;
    // Ladder intervals in increasing time: i = d .. 2 covers (M_i, M_{i-1}).
    for (std::size_t i = ladder.size(); i >= 2; --i) {
      const Rational& lo = ladder[i - 1];
      const Rational& hi = ladder[i - 2];
      StrategyCell point = in[pos++];
      std::vector<StrategyCell> interior;
      while (pos < in.size() && in[pos].lo < in[pos].hi && in[pos].hi <= hi) {
        interior.push_back(in[pos++]);
      }
      int end = ends[i][k];
      auto& last = interior.back();
      if (last.label == kWait && end != kWait) {
        Rational cut = Max(last.lo, hi - delta);
        if (cut == last.lo) {
          last.label = end;
          last.shifted = true;
        } else {
          StrategyCell tail{cut, last.hi, true, false, end, true};
          last.hi = cut;
          interior.push_back(tail);
        }
      }
      auto& first = interior.front();
      if (point.label == kWait && first.label != kWait) {
        Rational cut = Min(first.hi, lo + delta);
        if (cut == first.hi) {
          first.label = kWait;
          first.shifted = true;
        } else {
          StrategyCell head{lo, cut, false, false, kWait, true};
          first.lo = cut;
          first.lo_closed = true;
          interior.insert(interior.begin(), head);
        }
      }
      cells.push_back(point);
      cells.insert(cells.end(), interior.begin(), interior.end());
    }
    cells.push_back(in[pos]);  // the point M_1
  }
  return out;
}

}  // namespace oneclock
