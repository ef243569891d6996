#pragma once

#include <limits>

namespace certopt {

/// Closed interval with binary64 bounds, possibly unbounded.
///
/// Every operation rounds outward: the returned interval encloses the exact
/// real result set for all inputs. The empty interval is canonically
/// [+inf, -inf]; it absorbs every operation.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr Interval(double value) : lo(value), hi(value) {}
  constexpr Interval(double lower, double upper) : lo(lower), hi(upper) {}

  static constexpr Interval empty() {
    return Interval(std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity());
  }
  static constexpr Interval entire() {
    return Interval(-std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity());
  }

  bool is_empty() const { return !(lo <= hi); }
  bool is_point() const { return lo == hi; }
  bool is_bounded() const {
    return lo > -std::numeric_limits<double>::infinity() &&
           hi < std::numeric_limits<double>::infinity();
  }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }

  /// hi - lo rounded up; 0 for the empty interval.
  double width() const;
  /// Midpoint clamped into [lo, hi]; finite for bounded nonempty intervals.
  double mid() const;
  /// max(|lo|, |hi|).
  double mag() const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Arithmetic. Division by an interval containing zero yields the extended
// enclosure (a half-line when a bound of the divisor is exactly zero,
// otherwise the entire line).
Interval operator+(const Interval& x, const Interval& y);
Interval operator-(const Interval& x, const Interval& y);
Interval operator*(const Interval& x, const Interval& y);
Interval operator/(const Interval& x, const Interval& y);
Interval operator-(const Interval& x);

// Elementary functions. sqrt clamps a partially negative input to
// [0, hi] and returns empty for an entirely negative one; log behaves
// accordingly on inputs touching zero. pow_k keeps negative bases exact via
// the even/odd sign rule (never exp(k log x)).
Interval sqrt(const Interval& x);
Interval abs(const Interval& x);
Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval sin(const Interval& x);
Interval cos(const Interval& x);
/// Principal-branch inverses, clipped to the function domain [-1, 1];
/// empty when the input misses it. Used for backward trig propagation.
Interval asin(const Interval& x);
Interval acos(const Interval& x);
Interval pow_k(const Interval& x, int k);
/// Enclosure of the set {r : r^k in x} for even k restricted to r >= 0,
/// the full signed root for odd k. Used by backward propagation.
Interval root_k(const Interval& x, int k);

Interval intersect(const Interval& x, const Interval& y);
Interval hull(const Interval& x, const Interval& y);

/// Tight enclosure of pi.
const Interval& pi_interval();

inline bool subset(const Interval& x, const Interval& y) {
  return x.is_empty() || (y.lo <= x.lo && x.hi <= y.hi);
}

}  // namespace certopt
