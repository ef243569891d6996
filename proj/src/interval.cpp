#include "certopt/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <numbers>

// Outward rounding is realized in round-to-nearest mode. For +, -, *, / and
// sqrt the residual of the rounded result is recovered exactly (TwoSum, or an
// fma-based product/quotient residual), so a bound is widened by one ulp only
// when the nearest result is inexact in the unsafe direction. Library
// transcendentals (sin, cos, exp, log) are not correctly rounded; their
// results are widened by two ulps per bound, which covers the documented
// sub-ulp worst-case errors of glibc with margin. No rounding-mode switches
// ever happen, so all operations stay pure and thread-safe.

namespace certopt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMax = std::numeric_limits<double>::max();

// One-ulp steps via bit increments (branch-light, inlinable; nextafter is an
// out-of-line libm call). Non-finite values pass through unchanged.
inline double next(double x) {
  if (!std::isfinite(x)) return x;
  if (x == 0.0) return std::numeric_limits<double>::denorm_min();
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof bits);
  if (x > 0) {
    ++bits;
  } else {
    --bits;
  }
  double out;
  std::memcpy(&out, &bits, sizeof out);
  return out;
}

inline double prev(double x) {
  if (!std::isfinite(x)) return x;
  if (x == 0.0) return -std::numeric_limits<double>::denorm_min();
  std::uint64_t bits;
  std::memcpy(&bits, &x, sizeof bits);
  if (x > 0) {
    --bits;
  } else {
    ++bits;
  }
  double out;
  std::memcpy(&out, &bits, sizeof out);
  return out;
}

// Knuth TwoSum error term; exact whenever s = a + b is finite.
inline double sum_err(double a, double b, double s) {
  double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

inline double add_down(double a, double b) {
  double s = a + b;
  if (std::isinf(s)) return s < 0 ? s : kMax;
  double e = sum_err(a, b, s);
  return (e < 0 || std::isnan(e)) ? prev(s) : s;
}

inline double add_up(double a, double b) {
  double s = a + b;
  if (std::isinf(s)) return s > 0 ? s : -kMax;
  double e = sum_err(a, b, s);
  return (e > 0 || std::isnan(e)) ? next(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

// Directed product of endpoint values with the 0 * inf = 0 convention
// (an exact-zero factor pins the whole slice of the product set to zero).
inline double mul_down(double a, double b) {
  if (a == 0 || b == 0) return 0.0;
  double p = a * b;
  if (std::isinf(p)) return p < 0 ? p : kMax;
  double e = std::fma(a, b, -p);
  return (e < 0 || std::isnan(e)) ? prev(p) : p;
}

inline double mul_up(double a, double b) {
  if (a == 0 || b == 0) return 0.0;
  double p = a * b;
  if (std::isinf(p)) return p > 0 ? p : -kMax;
  double e = std::fma(a, b, -p);
  return (e > 0 || std::isnan(e)) ? next(p) : p;
}

// Directed quotient; b != 0. The fma residual of a nearest-mode quotient is
// exact away from the subnormal range, where we widen unconditionally.
inline double div_down(double a, double b) {
  if (a == 0) return 0.0;
  double q = a / b;
  if (std::isinf(q)) return q < 0 ? q : kMax;
  if (std::isinf(a)) return q;
  if (std::abs(q) < std::numeric_limits<double>::min()) return prev(q);
  double r = std::fma(q, b, -a);  // sign of q*b - a
  bool quotient_above = (r > 0) == (b > 0);
  return (r != 0 && quotient_above) || std::isnan(r) ? prev(q) : q;
}

inline double div_up(double a, double b) {
  if (a == 0) return 0.0;
  double q = a / b;
  if (std::isinf(q)) return q > 0 ? q : -kMax;
  if (std::isinf(a)) return q;
  if (std::abs(q) < std::numeric_limits<double>::min()) return next(q);
  double r = std::fma(q, b, -a);
  bool quotient_below = (r < 0) == (b > 0);
  return (r != 0 && quotient_below) || std::isnan(r) ? next(q) : q;
}

inline double sqrt_down(double a) {
  if (a <= 0) return 0.0;
  double s = std::sqrt(a);
  if (std::isinf(s)) return kMax;
  double r = std::fma(s, s, -a);
  return r > 0 || std::isnan(r) ? prev(s) : s;
}

inline double sqrt_up(double a) {
  if (a <= 0) return 0.0;
  double s = std::sqrt(a);
  if (std::isinf(s)) return s;
  double r = std::fma(s, s, -a);
  return r < 0 || std::isnan(r) ? next(s) : s;
}

inline double lib_down(double v) {
  if (std::isinf(v)) return v > 0 ? kMax : v;  // overflowed result, clamp
  return prev(prev(v));
}

inline double lib_up(double v) {
  if (std::isinf(v)) return v > 0 ? v : -kMax;
  return next(next(v));
}

// Nonnegative base, k >= 1, by square-and-multiply with directed rounding.
inline double pow_pos_down(double x, int k) {
  double acc = 1.0, base = x;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) acc = mul_down(acc, base);
    if (e > 1) base = mul_down(base, base);
  }
  return acc;
}

inline double pow_pos_up(double x, int k) {
  double acc = 1.0, base = x;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) acc = mul_up(acc, base);
    if (e > 1) base = mul_up(base, base);
  }
  return acc;
}

// Conservative k-th root of a nonnegative value (pow is not correctly
// rounded; four ulps of widening dominate its error).
inline double root_pos_down(double a, int k) {
  if (a <= 0) return 0.0;
  if (std::isinf(a)) return kMax;
  double r = std::pow(a, 1.0 / static_cast<double>(k));
  for (int i = 0; i < 4; ++i) r = prev(r);
  return std::max(r, 0.0);
}

inline double root_pos_up(double a, int k) {
  if (a <= 0) return 0.0;
  if (std::isinf(a)) return kInf;
  double r = std::pow(a, 1.0 / static_cast<double>(k));
  for (int i = 0; i < 4; ++i) r = next(r);
  return r;
}

const Interval& half_pi_interval() {
  static const Interval v = pi_interval() / Interval(2.0);
  return v;
}

const Interval& inv_two_pi_interval() {
  static const Interval v = Interval(1.0) / (Interval(2.0) * pi_interval());
  return v;
}

// Does x possibly contain a point offset + 2*pi*k for integer k?
// Errs toward "yes"; a "no" answer is definite.
bool meets_grid(const Interval& x, const Interval& offset) {
  Interval k = (x - offset) * inv_two_pi_interval();
  if (!k.is_bounded()) return true;
  return std::floor(k.hi) >= std::ceil(k.lo);
}

}  // namespace

double Interval::width() const {
  if (is_empty()) return 0.0;
  return sub_up(hi, lo);
}

double Interval::mid() const {
  if (lo == -kInf && hi == kInf) return 0.0;
  if (lo == -kInf) return -kMax;
  if (hi == kInf) return kMax;
  double m = 0.5 * (lo + hi);
  if (!std::isfinite(m)) m = 0.5 * lo + 0.5 * hi;
  return std::clamp(m, lo, hi);
}

double Interval::mag() const { return std::max(std::abs(lo), std::abs(hi)); }

Interval operator+(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return Interval::empty();
  return {add_down(x.lo, y.lo), add_up(x.hi, y.hi)};
}

Interval operator-(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return Interval::empty();
  return {sub_down(x.lo, y.hi), sub_up(x.hi, y.lo)};
}

Interval operator-(const Interval& x) {
  if (x.is_empty()) return Interval::empty();
  return {-x.hi, -x.lo};
}

Interval operator*(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return Interval::empty();
  // Sign dispatch: only the extremal endpoint products are formed.
  if (x.lo >= 0) {
    if (y.lo >= 0) return {mul_down(x.lo, y.lo), mul_up(x.hi, y.hi)};
    if (y.hi <= 0) return {mul_down(x.hi, y.lo), mul_up(x.lo, y.hi)};
    return {mul_down(x.hi, y.lo), mul_up(x.hi, y.hi)};
  }
  if (x.hi <= 0) {
    if (y.lo >= 0) return {mul_down(x.lo, y.hi), mul_up(x.hi, y.lo)};
    if (y.hi <= 0) return {mul_down(x.hi, y.hi), mul_up(x.lo, y.lo)};
    return {mul_down(x.lo, y.hi), mul_up(x.lo, y.lo)};
  }
  if (y.lo >= 0) return {mul_down(x.lo, y.hi), mul_up(x.hi, y.hi)};
  if (y.hi <= 0) return {mul_down(x.hi, y.lo), mul_up(x.lo, y.lo)};
  return {std::min(mul_down(x.lo, y.hi), mul_down(x.hi, y.lo)),
          std::max(mul_up(x.lo, y.lo), mul_up(x.hi, y.hi))};
}

Interval operator/(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return Interval::empty();
  if (y.lo > 0) {
    if (x.lo >= 0) return {div_down(x.lo, y.hi), div_up(x.hi, y.lo)};
    if (x.hi <= 0) return {div_down(x.lo, y.lo), div_up(x.hi, y.hi)};
    return {div_down(x.lo, y.lo), div_up(x.hi, y.lo)};
  }
  if (y.hi < 0) {
    if (x.lo >= 0) return {div_down(x.hi, y.hi), div_up(x.lo, y.lo)};
    if (x.hi <= 0) return {div_down(x.hi, y.lo), div_up(x.lo, y.hi)};
    return {div_down(x.hi, y.hi), div_up(x.lo, y.hi)};
  }
  // Extended division: the divisor contains zero.
  if (x.lo == 0 && x.hi == 0 && (y.lo != 0 || y.hi != 0)) return {0.0, 0.0};
  if (x.lo < 0 && x.hi > 0) return Interval::entire();
  if (y.lo == 0 && y.hi == 0) return Interval::entire();
  if (x.lo >= 0) {
    if (y.hi == 0) return {-kInf, div_up(x.lo, y.lo)};
    if (y.lo == 0) return {div_down(x.lo, y.hi), kInf};
    return Interval::entire();
  }
  // x.hi <= 0
  if (y.hi == 0) return {div_down(x.hi, y.lo), kInf};
  if (y.lo == 0) return {-kInf, div_up(x.hi, y.hi)};
  return Interval::entire();
}

Interval sqrt(const Interval& x) {
  if (x.is_empty() || x.hi < 0) return Interval::empty();
  double lo = x.lo <= 0 ? 0.0 : sqrt_down(x.lo);
  double hi = x.hi == kInf ? kInf : sqrt_up(x.hi);
  return {lo, hi};
}

Interval abs(const Interval& x) {
  if (x.is_empty()) return Interval::empty();
  if (x.lo >= 0) return x;
  if (x.hi <= 0) return {-x.hi, -x.lo};
  return {0.0, std::max(-x.lo, x.hi)};
}

Interval exp(const Interval& x) {
  if (x.is_empty()) return Interval::empty();
  double lo = x.lo == -kInf ? 0.0 : std::max(0.0, lib_down(std::exp(x.lo)));
  double hi = x.hi == kInf ? kInf : lib_up(std::exp(x.hi));
  return {lo, hi};
}

Interval log(const Interval& x) {
  if (x.is_empty() || x.hi <= 0) return Interval::empty();
  double lo = x.lo <= 0 ? -kInf : lib_down(std::log(x.lo));
  double hi = x.hi == kInf ? kInf : lib_up(std::log(x.hi));
  return {lo, hi};
}

Interval sin(const Interval& x) {
  if (x.is_empty()) return Interval::empty();
  if (!x.is_bounded() || x.width() >= 7.0) return {-1.0, 1.0};
  const Interval& half_pi = half_pi_interval();
  double slo = std::sin(x.lo), shi = std::sin(x.hi);
  double hi = meets_grid(x, half_pi) ? 1.0
                                     : std::max(lib_up(slo), lib_up(shi));
  double lo = meets_grid(x, -half_pi) ? -1.0
                                      : std::min(lib_down(slo), lib_down(shi));
  return {std::max(lo, -1.0), std::min(hi, 1.0)};
}

Interval cos(const Interval& x) {
  if (x.is_empty()) return Interval::empty();
  if (!x.is_bounded() || x.width() >= 7.0) return {-1.0, 1.0};
  double clo = std::cos(x.lo), chi = std::cos(x.hi);
  double hi = meets_grid(x, Interval(0.0)) ? 1.0
                                           : std::max(lib_up(clo), lib_up(chi));
  double lo = meets_grid(x, pi_interval())
                  ? -1.0
                  : std::min(lib_down(clo), lib_down(chi));
  return {std::max(lo, -1.0), std::min(hi, 1.0)};
}

Interval asin(const Interval& x) {
  Interval z = intersect(x, {-1.0, 1.0});
  if (z.is_empty()) return Interval::empty();
  return {lib_down(std::asin(z.lo)), lib_up(std::asin(z.hi))};
}

Interval acos(const Interval& x) {
  Interval z = intersect(x, {-1.0, 1.0});
  if (z.is_empty()) return Interval::empty();
  return {lib_down(std::acos(z.hi)), lib_up(std::acos(z.lo))};
}

Interval pow_k(const Interval& x, int k) {
  if (x.is_empty()) return Interval::empty();
  if (k == 0) return {1.0, 1.0};
  if (k < 0) return Interval(1.0) / pow_k(x, -k);
  if (k == 1) return x;
  if (k == 2) {
    Interval m = abs(x);
    return {mul_down(m.lo, m.lo), mul_up(m.hi, m.hi)};
  }
  if (k % 2 == 0) {
    Interval m = abs(x);
    return {pow_pos_down(m.lo, k), pow_pos_up(m.hi, k)};
  }
  auto odd_down = [k](double e) {
    return e >= 0 ? pow_pos_down(e, k) : -pow_pos_up(-e, k);
  };
  auto odd_up = [k](double e) {
    return e >= 0 ? pow_pos_up(e, k) : -pow_pos_down(-e, k);
  };
  return {odd_down(x.lo), odd_up(x.hi)};
}

Interval root_k(const Interval& x, int k) {
  if (x.is_empty() || k < 1) return Interval::empty();
  if (k == 1) return x;
  if (k % 2 == 0) {
    Interval nn = intersect(x, {0.0, kInf});
    if (nn.is_empty()) return Interval::empty();
    if (k == 2) return sqrt(nn);
    return {root_pos_down(nn.lo, k), root_pos_up(nn.hi, k)};
  }
  auto odd_down = [k](double e) {
    return e >= 0 ? root_pos_down(e, k) : -root_pos_up(-e, k);
  };
  auto odd_up = [k](double e) {
    return e >= 0 ? root_pos_up(e, k) : -root_pos_down(-e, k);
  };
  return {odd_down(x.lo), odd_up(x.hi)};
}

Interval intersect(const Interval& x, const Interval& y) {
  if (x.is_empty() || y.is_empty()) return Interval::empty();
  double lo = std::max(x.lo, y.lo);
  double hi = std::min(x.hi, y.hi);
  return lo <= hi ? Interval{lo, hi} : Interval::empty();
}

Interval hull(const Interval& x, const Interval& y) {
  if (x.is_empty()) return y;
  if (y.is_empty()) return x;
  return {std::min(x.lo, y.lo), std::max(x.hi, y.hi)};
}

const Interval& pi_interval() {
  // binary64 pi underestimates the real value.
  static const Interval v{std::numbers::pi, next(std::numbers::pi)};
  return v;
}

}  // namespace certopt
