#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "oneclock/cost.h"
#include "oneclock/player.h"
#include "oneclock/rational.h"

namespace oneclock {

// Which value to read at a point: the left limit, the right limit, or the
// value at the point itself.
enum class Side { kLeft, kRight, kAt };

// A piecewise-linear map from a closed rational interval [lo, hi] (lo < hi)
// into ExtCost.
//
// Breakpoints b_0 = lo < b_1 < ... < b_m = hi cut the domain into m segments.
// Segment i covers (b_i, b_{i+1}) and is described by its right limit at b_i
// and its slope; an infinite segment is constant infinity with slope 0. The
// value at each breakpoint is stored separately so jump discontinuities can be
// represented with both one-sided limits.
//
// Instances are always canonical: adjacent segments that continue each other
// (same slope, matching values at the shared breakpoint) are merged, so two
// functions are equal exactly when their representations are equal.
class PiecewiseLinearFn {
 public:
  struct Segment {
    ExtCost start;  // right limit at the segment's left breakpoint
    Rational slope;

    friend bool operator==(const Segment&, const Segment&) = default;
  };

  PiecewiseLinearFn() = default;

  // Throws DomainError unless the breakpoints are strictly increasing, there
  // is one segment per gap and one value per breakpoint.
  PiecewiseLinearFn(std::vector<Rational> breakpoints,
                    std::vector<Segment> segments,
                    std::vector<ExtCost> point_values);

  // Point values are taken from the segments; throws DomainError if the
  // segments do not join up.
  static PiecewiseLinearFn Continuous(std::vector<Rational> breakpoints,
                                      std::vector<Segment> segments);
  // Continuous interpolation of finite (x, y) points with strictly
  // increasing x.
  static PiecewiseLinearFn Interpolate(
      const std::vector<std::pair<Rational, ExtCost>>& points);
  static PiecewiseLinearFn Constant(const Rational& lo, const Rational& hi,
                                    const ExtCost& value);
  static PiecewiseLinearFn Affine(const Rational& lo, const Rational& hi,
                                  const Rational& value_at_lo,
                                  const Rational& slope);

  const Rational& lo() const { return breaks_.front(); }
  const Rational& hi() const { return breaks_.back(); }
  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<ExtCost>& point_values() const { return points_; }

  // Left limit of segment i at its right breakpoint.
  ExtCost SegmentEnd(std::size_t i) const;

  // Throws DomainError if x is outside the domain, or if a left (right)
  // limit is requested at lo (hi).
  ExtCost Eval(const Rational& x, Side side = Side::kAt) const;

  bool IsContinuous() const;
  bool HasJumpAt(std::size_t breakpoint_index) const;
  bool IsConstantInfinity() const;
  bool IsFinite() const;
  std::vector<Rational> InteriorBreakpoints() const;

  friend bool operator==(const PiecewiseLinearFn&,
                         const PiecewiseLinearFn&) = default;

  friend std::ostream& operator<<(std::ostream& os,
                                  const PiecewiseLinearFn& f);

 private:
  void Canonicalize();
  std::size_t SegmentIndex(const Rational& x) const;

  std::vector<Rational> breaks_;
  std::vector<Segment> segments_;
  std::vector<ExtCost> points_;
};

// c + f(x).
PiecewiseLinearFn AddConstant(const PiecewiseLinearFn& f, const ExtCost& c);

// Pointwise minimum/maximum. All inputs must share the same domain.
PiecewiseLinearFn MinEnvelope(std::span<const PiecewiseLinearFn> fs);
PiecewiseLinearFn MaxEnvelope(std::span<const PiecewiseLinearFn> fs);

// The waiting option at a state with the given rate:
//   kMin: g(x) = inf_{x' in [x, hi]} rate * (x' - x) + f(x')
//   kMax: g(x) = sup_{x' in [x, hi]} rate * (x' - x) + f(x')
// f must be continuous and either finite everywhere or constant infinity.
PiecewiseLinearFn WaitClosure(const PiecewiseLinearFn& f, const Rational& rate,
                              Player player);

}  // namespace oneclock
