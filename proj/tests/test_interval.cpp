#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "certopt/box.hpp"
#include "certopt/interval.hpp"

using namespace certopt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rand_in(const Interval& x, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return x.lo + unit(rng) * (x.hi - x.lo);
}

Interval random_interval(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  double a = dist(rng), b = dist(rng);
  return a <= b ? Interval(a, b) : Interval(b, a);
}

}  // namespace

TEST_CASE("exact integer arithmetic stays exact") {
  Interval r = Interval(1, 2) + Interval(3, 4);
  CHECK(r.lo == 4.0);
  CHECK(r.hi == 6.0);

  Interval m = Interval(-1, 4) * Interval(-1, 4);
  CHECK(m.lo == -4.0);
  CHECK(m.hi == 16.0);

  Interval s = sqrt(Interval(4.0));
  CHECK(s.lo == 2.0);
  CHECK(s.hi == 2.0);
}

TEST_CASE("division by an interval spanning zero is extended") {
  Interval r = Interval(1, 1) / Interval(-1, 1);
  CHECK(r.lo == -kInf);
  CHECK(r.hi == kInf);

  SUBCASE("half-lines when a divisor bound is exactly zero") {
    Interval a = Interval(1, 2) / Interval(0, 3);
    CHECK(a.hi == kInf);
    CHECK(a.lo == doctest::Approx(1.0 / 3.0));
    CHECK(a.lo <= 1.0 / 3.0);

    Interval b = Interval(1, 2) / Interval(-3, 0);
    CHECK(b.lo == -kInf);
    CHECK(b.hi >= -1.0 / 3.0);
    CHECK(b.hi == doctest::Approx(-1.0 / 3.0));

    Interval c = Interval(-2, -1) / Interval(0, 3);
    CHECK(c.lo == -kInf);
    CHECK(c.hi == doctest::Approx(-1.0 / 3.0));

    Interval d = Interval(-2, -1) / Interval(-3, 0);
    CHECK(d.hi == kInf);
    CHECK(d.lo == doctest::Approx(1.0 / 3.0));
  }

  SUBCASE("degenerate zero divisor") {
    CHECK(Interval(1, 2) / Interval(0.0) == Interval::entire());
  }
  SUBCASE("zero numerator") {
    CHECK(Interval(0.0) / Interval(-1, 1) == Interval(0.0, 0.0));
  }
}

TEST_CASE("even powers apply the sign rule") {
  Interval sq = pow_k(Interval(-1, 4), 2);
  CHECK(sq.lo == 0.0);
  CHECK(sq.hi == 16.0);

  Interval p4 = pow_k(Interval(-1, 4), 4);
  CHECK(p4.lo == 0.0);
  CHECK(p4.hi == 256.0);

  Interval cube = pow_k(Interval(-2, 3), 3);
  CHECK(cube.lo == -8.0);
  CHECK(cube.hi == 27.0);

  CHECK(pow_k(Interval(-1, 4), 0) == Interval(1.0, 1.0));
}

TEST_CASE("sin detects spanned extrema") {
  Interval x(0.0, pi_interval().hi);
  Interval s = sin(x);
  CHECK(s.hi == 1.0);
  CHECK(s.lo <= 0.0);
  CHECK(s.lo >= -1e-15);

  // No extremum inside: monotone branch uses endpoint values.
  Interval t = sin(Interval(0.1, 0.2));
  CHECK(t.lo == doctest::Approx(std::sin(0.1)));
  CHECK(t.hi == doctest::Approx(std::sin(0.2)));
  CHECK(t.lo <= std::sin(0.1));
  CHECK(t.hi >= std::sin(0.2));

  CHECK(sin(Interval(0.0, 10.0)) == Interval(-1.0, 1.0));
  CHECK(cos(Interval(-0.5, 0.5)).hi == 1.0);
  Interval c = cos(Interval(3.0, 3.3));  // spans pi
  CHECK(c.lo == -1.0);
}

TEST_CASE("sqrt clamps partially negative input and rejects negative input") {
  Interval r = sqrt(Interval(-1.0, 4.0));
  CHECK(r.lo == 0.0);
  CHECK(r.hi == 2.0);
  CHECK(sqrt(Interval(-3.0, -2.0)).is_empty());
}

TEST_CASE("intersect and hull") {
  CHECK(intersect(Interval(0, 2), Interval(1, 3)) == Interval(1, 2));
  CHECK(intersect(Interval(0, 1), Interval(2, 3)).is_empty());
  CHECK(intersect(Interval(-7, 14), Interval(-kInf, -3)) == Interval(-7, -3));
  CHECK(hull(Interval(0, 1), Interval(3, 4)) == Interval(0, 4));
  CHECK(hull(Interval::empty(), Interval(3, 4)) == Interval(3, 4));
}

TEST_CASE("empty is absorbing") {
  Interval e = Interval::empty(), x(1, 2);
  CHECK((e + x).is_empty());
  CHECK((x - e).is_empty());
  CHECK((e * x).is_empty());
  CHECK((x / e).is_empty());
  CHECK(sin(e).is_empty());
  CHECK(sqrt(e).is_empty());
  CHECK(abs(e).is_empty());
  CHECK(pow_k(e, 2).is_empty());
  CHECK(intersect(e, x).is_empty());
}

TEST_CASE("inclusion fuzz over arithmetic and elementary functions") {
  std::mt19937_64 rng(20240901);
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    double scale = trial % 3 == 0 ? 1e3 : (trial % 3 == 1 ? 1.0 : 1e-3);
    Interval X = random_interval(rng, scale);
    Interval Y = random_interval(rng, scale);
    double x = rand_in(X, rng), y = rand_in(Y, rng);

    CHECK((X + Y).contains(x + y));
    CHECK((X - Y).contains(x - y));
    CHECK((X * Y).contains(x * y));
    if (y != 0.0) CHECK((X / Y).contains(x / y));

    CHECK(sin(X).contains(std::sin(x)));
    CHECK(cos(X).contains(std::cos(x)));
    CHECK(abs(X).contains(std::abs(x)));
    Interval A = abs(X);
    double ax = std::abs(x);
    CHECK(sqrt(A).contains(std::sqrt(ax)));
    if (scale <= 1.0) CHECK(exp(X).contains(std::exp(x)));
    for (int k : {2, 3, 5, 20}) {
      CHECK(pow_k(X, k).contains(std::pow(x, k)));
    }
    ++checked;
  }
  CHECK(checked == 10000);
}

TEST_CASE("enclosure is monotone under operand widening") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    Interval X = random_interval(rng, 10.0);
    Interval Y = random_interval(rng, 10.0);
    std::uniform_real_distribution<double> pad(0.0, 5.0);
    Interval Xw(X.lo - pad(rng), X.hi + pad(rng));
    Interval Yw(Y.lo - pad(rng), Y.hi + pad(rng));

    CHECK(subset(X + Y, Xw + Yw));
    CHECK(subset(X - Y, Xw - Yw));
    CHECK(subset(X * Y, Xw * Yw));
    CHECK(subset(X / Y, Xw / Yw));
    CHECK(subset(sin(X), sin(Xw)));
    CHECK(subset(pow_k(X, 4), pow_k(Xw, 4)));
  }
}

TEST_CASE("outward rounding near representability limits") {
  // Long-double evaluation is the oracle for the exact real result.
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto check_pair = [](double a, double b) {
    long double la = a, lb = b;
    Interval A(a), B(b);
    CHECK((A + B).lo <= static_cast<double>(la + lb));
    CHECK((A + B).hi >= static_cast<double>(la + lb));
    Interval P = A * B;
    long double lp = la * lb;
    CHECK((static_cast<long double>(P.lo) <= lp));
    CHECK((static_cast<long double>(P.hi) >= lp));
    if (b != 0) {
      Interval Q = A / B;
      long double lq = la / lb;
      CHECK((static_cast<long double>(Q.lo) <= lq));
      CHECK((static_cast<long double>(Q.hi) >= lq));
    }
  };
  for (int trial = 0; trial < 5000; ++trial) {
    double base = dist(rng);
    double a = base;
    double b = std::nextafter(base, kInf);  // one-ulp perturbations
    check_pair(a, b);
    check_pair(1.0 + dist(rng) * 1e-16, 1.0 - dist(rng) * 1e-16);
    check_pair(dist(rng) * 1e300, dist(rng) * 1e-300);
  }

  // sqrt residual direction.
  for (int trial = 0; trial < 2000; ++trial) {
    double a = std::abs(dist(rng)) * 1e6 + 1e-12;
    Interval S = sqrt(Interval(a));
    long double ls = sqrtl(static_cast<long double>(a));
    CHECK((static_cast<long double>(S.lo) <= ls));
    CHECK((static_cast<long double>(S.hi) >= ls));
  }
}

TEST_CASE("box bisection") {
  Box b{Interval(0, 4), Interval(0, 1)};
  auto [l, r] = bisect(b);
  CHECK(l[0] == Interval(0, 2));
  CHECK(r[0] == Interval(2, 4));
  CHECK(l[1] == Interval(0, 1));

  Box tie{Interval(0, 1), Interval(0, 1)};
  auto [tl, tr] = bisect(tie);
  CHECK(tl[0] == Interval(0, 0.5));
  CHECK(tl[1] == Interval(0, 1));

  Box single{Interval(-1, 4)};
  auto [sl, sr] = bisect(single);
  CHECK(sl[0] == Interval(-1, 1.5));
  CHECK(sr[0] == Interval(1.5, 4));

  Box degenerate{Interval(1.0), Interval(2.0)};
  CHECK_THROWS_AS(bisect(degenerate), std::invalid_argument);
}

TEST_CASE("box utilities") {
  Box b{Interval(0, 4), Interval(1, 2)};
  CHECK(b.max_width() == 4.0);
  CHECK(b.midpoint()[0] == 2.0);
  CHECK(b.midpoint()[1] == 1.5);
  CHECK(!b.is_empty());
  CHECK(b.volume() == 4.0);
  Vector p(2);
  p << 1.0, 1.5;
  CHECK(b.contains(p));
  Box e = b;
  e[1] = Interval::empty();
  CHECK(e.is_empty());
}
