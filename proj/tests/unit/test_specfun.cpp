#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>

#include "hgturb/errors.hpp"
#include "hgturb/specfun.hpp"

using namespace hgturb;
using specfun::HalfInteger;

namespace {

// Exact rational arithmetic for small terminating series.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational(std::int64_t n = 0, std::int64_t d = 1) : num(n), den(d) { reduce(); }
  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  friend Rational operator+(Rational a, Rational b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend Rational operator/(Rational a, Rational b) { return {a.num * b.den, a.den * b.num}; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// sum_n (-k)_n (-l)_n / ((c)_n n!) x^n, c and x rational.
Rational terminating_exact(int k, int l, Rational c, Rational x) {
  Rational sum = 1;
  Rational term = 1;
  for (int n = 0; n < std::min(k, l); ++n) {
    term = term * Rational(n - k) * Rational(n - l) / ((c + Rational(n)) * Rational(n + 1)) * x;
    sum = sum + term;
  }
  return sum;
}

long double direct_series(long double a, long double b, long double c, long double x) {
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int n = 0; n < 200000; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x;
    sum += term;
    if (std::abs(term) < 1e-24L) break;
  }
  return sum;
}

const double kSqrtPi = std::sqrt(std::numbers::pi);

}  // namespace

TEST(GammaHalf, AnchorValues) {
  EXPECT_NEAR(specfun::gamma_half(HalfInteger::halves(1)), 1.7724538509055160, 1e-15);
  EXPECT_EQ(specfun::gamma_half(HalfInteger::whole(1)), 1.0);
  EXPECT_NEAR(specfun::gamma_half(HalfInteger::halves(5)), 0.75 * kSqrtPi, 1e-15);
  EXPECT_EQ(specfun::gamma_half(HalfInteger::whole(6)), 120.0);
}

TEST(GammaHalf, RecurrenceHoldsAcrossRange) {
  for (int t = 1; t <= 80; ++t) {
    const double x = 0.5 * t;
    const double ratio =
        specfun::gamma_half(HalfInteger(t + 2)) / specfun::gamma_half(HalfInteger(t));
    EXPECT_NEAR(ratio / x, 1.0, 1e-13) << "x = " << x;
  }
}

TEST(GammaHalf, AgreesWithLibm) {
  for (int t = 1; t <= 40; ++t) {
    EXPECT_NEAR(specfun::gamma_half(HalfInteger(t)) / std::tgamma(0.5 * t), 1.0, 1e-13);
  }
}

TEST(GammaHalf, RejectsNonPositive) {
  EXPECT_THROW(specfun::gamma_half(HalfInteger(0)), DomainError);
  EXPECT_THROW(specfun::gamma_half(HalfInteger(-1)), DomainError);
  EXPECT_THROW(specfun::gamma_half(HalfInteger(-4)), DomainError);
}

TEST(Pochhammer, Examples) {
  EXPECT_EQ(specfun::pochhammer(-0.5, 2), -0.25);
  EXPECT_EQ(specfun::pochhammer(3.0, 0), 1.0);
  EXPECT_EQ(specfun::pochhammer(1.0, 4), 24.0);
  EXPECT_EQ(specfun::pochhammer(-3.0, 5), 0.0);
}

TEST(HypTerminating, ZeroParameterGivesOne) {
  const auto v = specfun::hyp2f1_terminating(0, 5, HalfInteger::whole(-2), {0.3, 0.1});
  EXPECT_EQ(v, std::complex<double>(1.0, 0.0));
}

TEST(HypTerminating, TwoTermSeries) {
  // 1 + (-1)(-1) / (-1/2) * 1/2 = 0
  const Rational exact = terminating_exact(1, 1, Rational(-1, 2), Rational(1, 2));
  EXPECT_EQ(exact.num, 0);
  const auto v = specfun::hyp2f1_terminating(1, 1, HalfInteger::halves(-1), 0.5);
  EXPECT_NEAR(std::abs(v), 0.0, 1e-15);
}

TEST(HypTerminating, ThreeTermSeriesMatchesExactRational) {
  const Rational exact = terminating_exact(2, 2, Rational(-3, 2), Rational(1, 4));
  EXPECT_EQ(exact.num, 1);
  EXPECT_EQ(exact.den, 2);
  const auto v = specfun::hyp2f1_terminating(2, 2, HalfInteger::halves(-3), 0.25);
  EXPECT_NEAR(v.real(), exact.value(), 1e-15);
  EXPECT_EQ(v.imag(), 0.0);
}

TEST(HypTerminating, MatchesExactRationalsOnGrid) {
  for (int k = 0; k <= 6; ++k) {
    for (int l = 0; l <= 6; ++l) {
      const int twice_c = 1 - k - l;
      const Rational exact = terminating_exact(k, l, Rational(twice_c, 2), Rational(2, 5));
      const auto v = specfun::hyp2f1_terminating(k, l, HalfInteger(twice_c), 0.4);
      EXPECT_NEAR(v.real(), exact.value(), 1e-12 * std::max(1.0, std::abs(exact.value())))
          << k << "," << l;
    }
  }
}

TEST(HypTerminating, SymmetricInTheTwoParameters) {
  const std::complex<double> x{0.37, -0.61};
  for (unsigned k = 0; k <= 9; ++k) {
    for (unsigned l = 0; l <= 9; ++l) {
      const HalfInteger c = HalfInteger::halves(1 - static_cast<int>(k + l));
      EXPECT_EQ(specfun::hyp2f1_terminating(k, l, c, x), specfun::hyp2f1_terminating(l, k, c, x));
    }
  }
}

TEST(HypTerminating, PoleBeforeTermination) {
  EXPECT_THROW(specfun::hyp2f1_terminating(3, 3, HalfInteger::whole(-1), 0.5), PoleError);
  EXPECT_THROW(specfun::hyp2f1_terminating(2, 2, HalfInteger::whole(0), 0.5), PoleError);
  EXPECT_NO_THROW(specfun::hyp2f1_terminating(1, 1, HalfInteger::whole(-1), 0.5));
}

TEST(HypReal, ZeroArgumentIsExactlyOne) {
  for (double a : {-2.5, 0.5, 3.0}) {
    EXPECT_EQ(specfun::hyp2f1_real(a, 1.5, 0.5, 0.0), 1.0);
  }
}

TEST(HypReal, ClosedForms) {
  EXPECT_NEAR(specfun::hyp2f1_real(0.5, 3.0, 3.0, -1.0), 0.70710678118654752, 1e-12);
  EXPECT_NEAR(specfun::hyp2f1_real(1.0, 1.0, 2.0, -0.5) / 0.81093021621632877, 1.0, 1e-12);
  // 2F1(1/2, 1; 3/2; x^2) = atanh(x) / x
  EXPECT_NEAR(specfun::hyp2f1_real(0.5, 1.0, 1.5, 0.25) / (std::atanh(0.5) / 0.5), 1.0, 1e-12);
  // 2F1(1/2, 1; 3/2; -x^2) = atan(x) / x
  EXPECT_NEAR(specfun::hyp2f1_real(0.5, 1.0, 1.5, -4.0) / (std::atan(2.0) / 2.0), 1.0, 1e-12);
}

TEST(HypReal, PfaffAgreesWithDirectSeries) {
  const double grid[] = {-0.5, 0.5, 1.0, 1.5};
  for (double a : grid) {
    for (double b : grid) {
      for (double c : grid) {
        for (double x : {-0.9, -0.5, -0.1}) {
          const double want = static_cast<double>(direct_series(a, b, c, x));
          const double got = specfun::hyp2f1_real(a, b, c, x);
          EXPECT_NEAR(got, want, 1e-10 * std::max(std::abs(want), 1e-6))
              << a << " " << b << " " << c << " " << x;
        }
      }
    }
  }
}

TEST(HypReal, Errors) {
  EXPECT_THROW(specfun::hyp2f1_real(0.5, 0.5, 0.0, 0.3), PoleError);
  EXPECT_THROW(specfun::hyp2f1_real(0.5, 0.5, -2.0, 0.3), PoleError);
  EXPECT_THROW(specfun::hyp2f1_real(0.5, 0.5, 1.5, 1.0), DomainError);
  EXPECT_THROW(specfun::hyp2f1_real(0.5, 0.5, 1.5, 2.0), DomainError);
}

TEST(HypReal, SlowSeriesNearOneStillConverges) {
  // 2F1(1, 1; 2; x) = -ln(1 - x) / x
  const double x = 0.99;
  EXPECT_NEAR(specfun::hyp2f1_real(1.0, 1.0, 2.0, x) / (-std::log1p(-x) / x), 1.0, 1e-12);
}

TEST(HypReal, IterationCapReportsFailure) {
  EXPECT_THROW(specfun::hyp2f1_real(1.0, 1.0, 2.0, 0.9999), NumericalFailure);
}
