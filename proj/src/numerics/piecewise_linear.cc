#include "oneclock/piecewise_linear.h"

#include <algorithm>
#include <string>

#include "oneclock/error.h"

namespace oneclock {

namespace {

ExtCost Advance(const ExtCost& start, const Rational& slope,
                const Rational& dx) {
  if (start.is_infinite()) return start;
  return ExtCost(start.value() + slope * dx);
}

// A line restricted to one elementary interval of an envelope computation.
struct Line {
  ExtCost at_left;  // value at the interval's left end
  Rational slope;
};

ExtCost LineAt(const Line& l, const Rational& left, const Rational& x) {
  return Advance(l.at_left, l.slope, x - left);
}

PiecewiseLinearFn Envelope(std::span<const PiecewiseLinearFn> fs,
                           bool take_min) {
  if (fs.empty()) throw DomainError("envelope of an empty list");
  const Rational& lo = fs.front().lo();
  const Rational& hi = fs.front().hi();
  std::vector<Rational> cuts;
  for (const auto& f : fs) {
    if (f.lo() != lo || f.hi() != hi) {
      throw DomainError("envelope operands have different domains");
    }
    cuts.insert(cuts.end(), f.breakpoints().begin(), f.breakpoints().end());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto better = [take_min](const ExtCost& a, const ExtCost& b) {
    return take_min ? a < b : b < a;
  };

  std::vector<Rational> breaks;
  std::vector<PiecewiseLinearFn::Segment> segments;
  std::vector<ExtCost> points;

  auto point_opt = [&](const Rational& x) {
    ExtCost best = fs.front().Eval(x);
    for (const auto& f : fs.subspan(1)) {
      ExtCost v = f.Eval(x);
      if (better(v, best)) best = v;
    }
    return best;
  };

  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const Rational& p = cuts[c];
    const Rational& q = cuts[c + 1];
    std::vector<Line> lines;
    lines.reserve(fs.size());
    for (const auto& f : fs) {
      Rational mid = (p + q) / Rational(2);
      // Each operand is affine on (p, q); read its piece through the midpoint.
      ExtCost at_mid = f.Eval(mid);
      ExtCost at_p = f.Eval(p, Side::kRight);
      Rational slope;
      if (at_p.is_finite()) slope = (at_mid.value() - at_p.value()) / (mid - p);
      lines.push_back({at_p, slope});
    }
    // Sub-cut where two finite lines cross strictly inside (p, q).
    std::vector<Rational> sub = {p, q};
    for (std::size_t a = 0; a < lines.size(); ++a) {
      for (std::size_t b = a + 1; b < lines.size(); ++b) {
        const Line& la = lines[a];
        const Line& lb = lines[b];
        if (la.at_left.is_infinite() || lb.at_left.is_infinite()) continue;
        if (la.slope == lb.slope) continue;
        Rational t = p + (lb.at_left.value() - la.at_left.value()) /
                             (la.slope - lb.slope);
        if (p < t && t < q) sub.push_back(t);
      }
    }
    std::sort(sub.begin(), sub.end());
    sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
    for (std::size_t s = 0; s + 1 < sub.size(); ++s) {
      const Rational& a = sub[s];
      const Rational& b = sub[s + 1];
      Rational mid = (a + b) / Rational(2);
      std::size_t best = 0;
      ExtCost best_mid = LineAt(lines[0], p, mid);
      for (std::size_t i = 1; i < lines.size(); ++i) {
        ExtCost v = LineAt(lines[i], p, mid);
        if (better(v, best_mid)) {
          best = i;
          best_mid = v;
        }
      }
      breaks.push_back(a);
      points.push_back(s == 0 ? point_opt(a) : LineAt(lines[best], p, a));
      ExtCost start = LineAt(lines[best], p, a);
      segments.push_back(
          {start, start.is_finite() ? lines[best].slope : Rational()});
    }
  }
  breaks.push_back(hi);
  points.push_back(point_opt(hi));
  return PiecewiseLinearFn(std::move(breaks), std::move(segments),
                           std::move(points));
}

// Running optimum from the right of the continuous interpolation of pts.
std::vector<std::pair<Rational, Rational>> RunningOptFromRight(
    const std::vector<std::pair<Rational, Rational>>& pts, bool take_min) {
  auto better = [take_min](const Rational& a, const Rational& b) {
    return take_min ? a < b : b < a;
  };
  std::vector<std::pair<Rational, Rational>> out;
  Rational m = pts.back().second;
  out.push_back(pts.back());
  for (std::size_t i = pts.size() - 1; i-- > 0;) {
    const auto& [xi, yi] = pts[i];
    const auto& [xj, yj] = pts[i + 1];
    if (!better(yi, m)) {
      out.emplace_back(xi, m);
      continue;
    }
    // yi beats m while yj does not: the piece crosses level m once.
    Rational c = xi + (m - yi) * (xj - xi) / (yj - yi);
    if (c != xj) out.emplace_back(c, m);
    out.emplace_back(xi, yi);
    m = yi;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

PiecewiseLinearFn::PiecewiseLinearFn(std::vector<Rational> breakpoints,
                                     std::vector<Segment> segments,
                                     std::vector<ExtCost> point_values)
    : breaks_(std::move(breakpoints)),
      segments_(std::move(segments)),
      points_(std::move(point_values)) {
  if (breaks_.size() < 2) {
    throw DomainError("piecewise-linear function needs lo < hi");
  }
  if (segments_.size() + 1 != breaks_.size() ||
      points_.size() != breaks_.size()) {
    throw DomainError("segment/breakpoint count mismatch");
  }
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1])) {
      throw DomainError("breakpoints must be strictly increasing");
    }
  }
  for (auto& s : segments_) {
    if (s.start.is_infinite()) s.slope = Rational();
  }
  Canonicalize();
}

PiecewiseLinearFn PiecewiseLinearFn::Continuous(
    std::vector<Rational> breakpoints, std::vector<Segment> segments) {
  if (breakpoints.size() < 2 || segments.size() + 1 != breakpoints.size()) {
    throw DomainError("segment/breakpoint count mismatch");
  }
  std::vector<ExtCost> points;
  points.reserve(breakpoints.size());
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (i > 0) {
      ExtCost end = Advance(segments[i - 1].start, segments[i - 1].slope,
                            breakpoints[i] - breakpoints[i - 1]);
      if (end != segments[i].start) {
        throw DomainError("segments do not join at " +
                          breakpoints[i].ToString());
      }
    }
    points.push_back(segments[i].start);
  }
  points.push_back(Advance(segments.back().start, segments.back().slope,
                           breakpoints.back() - breakpoints[breakpoints.size() - 2]));
  return PiecewiseLinearFn(std::move(breakpoints), std::move(segments),
                           std::move(points));
}

PiecewiseLinearFn PiecewiseLinearFn::Interpolate(
    const std::vector<std::pair<Rational, ExtCost>>& points) {
  if (points.size() < 2) throw DomainError("interpolation needs two points");
  std::vector<Rational> breaks;
  std::vector<Segment> segments;
  std::vector<ExtCost> values;
  for (std::size_t i = 0; i < points.size(); ++i) {
    breaks.push_back(points[i].first);
    values.push_back(points[i].second);
    if (i + 1 == points.size()) break;
    const auto& [x0, y0] = points[i];
    const auto& [x1, y1] = points[i + 1];
    if (y0.is_infinite() != y1.is_infinite()) {
      throw DomainError("cannot interpolate between finite and infinite");
    }
    Rational slope;
    if (y0.is_finite()) slope = (y1.value() - y0.value()) / (x1 - x0);
    segments.push_back({y0, slope});
  }
  return PiecewiseLinearFn(std::move(breaks), std::move(segments),
                           std::move(values));
}

PiecewiseLinearFn PiecewiseLinearFn::Constant(const Rational& lo,
                                              const Rational& hi,
                                              const ExtCost& value) {
  return PiecewiseLinearFn({lo, hi}, {{value, Rational()}}, {value, value});
}

PiecewiseLinearFn PiecewiseLinearFn::Affine(const Rational& lo,
                                            const Rational& hi,
                                            const Rational& value_at_lo,
                                            const Rational& slope) {
  ExtCost end(value_at_lo + slope * (hi - lo));
  return PiecewiseLinearFn({lo, hi}, {{ExtCost(value_at_lo), slope}},
                           {ExtCost(value_at_lo), end});
}

ExtCost PiecewiseLinearFn::SegmentEnd(std::size_t i) const {
  return Advance(segments_[i].start, segments_[i].slope,
                 breaks_[i + 1] - breaks_[i]);
}

void PiecewiseLinearFn::Canonicalize() {
  std::vector<Rational> breaks = {breaks_.front()};
  std::vector<Segment> segments = {segments_.front()};
  std::vector<ExtCost> points = {points_.front()};
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    const Segment& prev = segments.back();
    ExtCost prev_end =
        Advance(prev.start, prev.slope, breaks_[i] - breaks.back());
    const Segment& cur = segments_[i];
    bool continues = prev_end == points_[i] && cur.start == points_[i] &&
                     prev.slope == cur.slope;
    if (continues) continue;
    breaks.push_back(breaks_[i]);
    segments.push_back(cur);
    points.push_back(points_[i]);
  }
  breaks.push_back(breaks_.back());
  points.push_back(points_.back());
  breaks_ = std::move(breaks);
  segments_ = std::move(segments);
  points_ = std::move(points);
}

std::size_t PiecewiseLinearFn::SegmentIndex(const Rational& x) const {
  // Last segment whose left breakpoint is <= x, clamped to the final segment.
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t idx = static_cast<std::size_t>(it - breaks_.begin());
  if (idx == 0) return 0;
  return std::min(idx - 1, segments_.size() - 1);
}

ExtCost PiecewiseLinearFn::Eval(const Rational& x, Side side) const {
  if (x < lo() || x > hi()) {
    throw DomainError("evaluation at " + x.ToString() + " outside [" +
                      lo().ToString() + ", " + hi().ToString() + "]");
  }
  if (side == Side::kLeft && x == lo()) {
    throw DomainError("left limit requested at the domain's lower end");
  }
  if (side == Side::kRight && x == hi()) {
    throw DomainError("right limit requested at the domain's upper end");
  }
  auto it = std::lower_bound(breaks_.begin(), breaks_.end(), x);
  bool at_break = it != breaks_.end() && *it == x;
  if (at_break) {
    std::size_t b = static_cast<std::size_t>(it - breaks_.begin());
    switch (side) {
      case Side::kAt:
        return points_[b];
      case Side::kLeft:
        return SegmentEnd(b - 1);
      case Side::kRight:
        return segments_[b].start;
    }
  }
  std::size_t s = SegmentIndex(x);
  return Advance(segments_[s].start, segments_[s].slope, x - breaks_[s]);
}

bool PiecewiseLinearFn::HasJumpAt(std::size_t b) const {
  if (b > 0 && SegmentEnd(b - 1) != points_[b]) return true;
  if (b + 1 < breaks_.size() && segments_[b].start != points_[b]) return true;
  return false;
}

bool PiecewiseLinearFn::IsContinuous() const {
  for (std::size_t b = 0; b < breaks_.size(); ++b) {
    if (HasJumpAt(b)) return false;
  }
  return true;
}

bool PiecewiseLinearFn::IsConstantInfinity() const {
  return segments_.size() == 1 && segments_[0].start.is_infinite() &&
         points_.front().is_infinite() && points_.back().is_infinite();
}

bool PiecewiseLinearFn::IsFinite() const {
  for (const auto& s : segments_) {
    if (s.start.is_infinite()) return false;
  }
  for (const auto& p : points_) {
    if (p.is_infinite()) return false;
  }
  return true;
}

std::vector<Rational> PiecewiseLinearFn::InteriorBreakpoints() const {
  return std::vector<Rational>(breaks_.begin() + 1, breaks_.end() - 1);
}

std::ostream& operator<<(std::ostream& os, const PiecewiseLinearFn& f) {
  os << "{";
  for (std::size_t i = 0; i < f.segments_.size(); ++i) {
    if (i > 0) os << ", ";
    os << "[" << f.breaks_[i] << "," << f.breaks_[i + 1] << "]: "
       << f.segments_[i].start << " slope " << f.segments_[i].slope;
    if (f.HasJumpAt(i)) os << " (point " << f.points_[i] << ")";
  }
  if (f.HasJumpAt(f.breaks_.size() - 1)) {
    os << " (point " << f.points_.back() << ")";
  }
  return os << "}";
}

PiecewiseLinearFn AddConstant(const PiecewiseLinearFn& f, const ExtCost& c) {
  std::vector<PiecewiseLinearFn::Segment> segments;
  std::vector<ExtCost> points;
  for (const auto& s : f.segments()) segments.push_back({s.start + c, s.slope});
  for (const auto& p : f.point_values()) points.push_back(p + c);
  return PiecewiseLinearFn(f.breakpoints(), std::move(segments),
                           std::move(points));
}

PiecewiseLinearFn MinEnvelope(std::span<const PiecewiseLinearFn> fs) {
  return Envelope(fs, /*take_min=*/true);
}

PiecewiseLinearFn MaxEnvelope(std::span<const PiecewiseLinearFn> fs) {
  return Envelope(fs, /*take_min=*/false);
}

PiecewiseLinearFn WaitClosure(const PiecewiseLinearFn& f, const Rational& rate,
                              Player player) {
  if (rate.sign() < 0) {
    throw ValidationError("negative waiting rate " + rate.ToString(),
                          ErrorCode::kNegativeRate);
  }
  if (!f.IsContinuous()) {
    throw DomainError("wait closure requires a continuous function");
  }
  if (f.IsConstantInfinity()) return f;
  if (!f.IsFinite()) {
    throw DomainError("wait closure requires a finite or constant-inf function");
  }
  // opt_{x' >= x} (f(x') + rate x') - rate x
  std::vector<std::pair<Rational, Rational>> pts;
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    const Rational& x = f.breakpoints()[i];
    pts.emplace_back(x, f.point_values()[i].value() + rate * x);
  }
  auto running = RunningOptFromRight(pts, player == Player::kMin);
  std::vector<std::pair<Rational, ExtCost>> out;
  out.reserve(running.size());
  for (auto& [x, y] : running) out.emplace_back(x, ExtCost(y - rate * x));
  return PiecewiseLinearFn::Interpolate(out);
}

}  // namespace oneclock
