#pragma once

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "oneclock/rational.h"

namespace oneclock {

// A rational cost or +infinity. Infinity absorbs addition and compares above
// every finite value.
class ExtCost {
 public:
  ExtCost() = default;
  ExtCost(Rational value) : value_(std::move(value)) {}  // NOLINT
  ExtCost(int value) : value_(value) {}                  // NOLINT
  ExtCost(long value) : value_(value) {}                 // NOLINT

  static ExtCost Infinity() {
    ExtCost c;
    c.infinite_ = true;
    return c;
  }
  static ExtCost Zero() { return ExtCost(); }

  // "inf" or a rational literal.
  static ExtCost Parse(std::string_view text);
  std::string ToString() const;

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  // Precondition: finite.
  const Rational& value() const;

  ExtCost& operator+=(const ExtCost& o);
  friend ExtCost operator+(ExtCost a, const ExtCost& b) { return a += b; }

  friend bool operator==(const ExtCost& a, const ExtCost& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExtCost& a, const ExtCost& b) {
    if (a.infinite_ || b.infinite_) {
      return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
    }
    return a.value_ <=> b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtCost& c) {
    return os << c.ToString();
  }

 private:
  Rational value_;
  bool infinite_ = false;
};

inline ExtCost Min(const ExtCost& a, const ExtCost& b) { return b < a ? b : a; }
inline ExtCost Max(const ExtCost& a, const ExtCost& b) { return a < b ? b : a; }

// base + eps * ε with ε a positive infinitesimal. Ordered lexicographically.
// An infinite base forces eps = 0, so all infinite values compare equal.
class EpsCost {
 public:
  EpsCost() = default;
  EpsCost(ExtCost base, Rational eps = Rational());  // NOLINT
  EpsCost(int value) : base_(value) {}               // NOLINT

  static EpsCost Infinity() { return EpsCost(ExtCost::Infinity()); }
  static EpsCost Zero() { return EpsCost(); }

  const ExtCost& base() const { return base_; }
  const Rational& eps() const { return eps_; }
  bool is_infinite() const { return base_.is_infinite(); }
  bool is_finite() const { return base_.is_finite(); }

  std::string ToString() const;

  EpsCost& operator+=(const EpsCost& o);
  friend EpsCost operator+(EpsCost a, const EpsCost& b) { return a += b; }

  friend bool operator==(const EpsCost& a, const EpsCost& b) = default;
  friend std::strong_ordering operator<=>(const EpsCost& a, const EpsCost& b) {
    if (auto c = a.base_ <=> b.base_; c != 0) return c;
    return a.eps_ <=> b.eps_;
  }

  friend std::ostream& operator<<(std::ostream& os, const EpsCost& c) {
    return os << c.ToString();
  }

 private:
  ExtCost base_;
  Rational eps_;
};

// Cost-domain traits used by the generic priced-game algorithms.
template <class C>
struct CostTraits;

template <>
struct CostTraits<ExtCost> {
  static ExtCost Zero() { return ExtCost::Zero(); }
  static ExtCost Infinity() { return ExtCost::Infinity(); }
  static const ExtCost& Base(const ExtCost& c) { return c; }
};

template <>
struct CostTraits<EpsCost> {
  static EpsCost Zero() { return EpsCost::Zero(); }
  static EpsCost Infinity() { return EpsCost::Infinity(); }
  static const ExtCost& Base(const EpsCost& c) { return c.base(); }
};

}  // namespace oneclock
