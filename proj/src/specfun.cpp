#include "hgturb/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hgturb/errors.hpp"

namespace hgturb::specfun {

namespace {

constexpr int kMaxSeriesTerms = 10000;
constexpr double kSeriesTolerance = 1e-16;

bool is_nonpositive_integer(double c) { return c <= 0.0 && c == std::floor(c); }

// Direct power series, valid for 0 <= x < 1.
double hyp2f1_series(double a, double b, double c, double x) {
  double sum = 1.0;
  double term = 1.0;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    const double ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
    term *= ratio;
    sum += term;
    if (term == 0.0) {
      return sum;
    }
    // Only stop once the terms are shrinking; early terms can be small when
    // a + n or b + n sits close to zero.
    if (std::abs(term) <= kSeriesTolerance * std::abs(sum) && std::abs(ratio) < 1.0) {
      return sum;
    }
  }
  throw NumericalFailure("hyp2f1_real: series did not converge within " +
                         std::to_string(kMaxSeriesTerms) + " terms");
}

}  // namespace

double gamma_half(HalfInteger x) {
  const int twice = x.twice();
  if (twice <= 0) {
    throw DomainError("gamma_half: argument must be positive, got " + std::to_string(x.value()));
  }
  if (twice % 2 == 0) {
    // Gamma(n) = (n-1)!
    double result = 1.0;
    for (int j = 2; j < twice / 2; ++j) {
      result *= j;
    }
    return result;
  }
  double result = std::sqrt(std::numbers::pi);
  for (int t = 1; t < twice; t += 2) {
    result *= 0.5 * t;
  }
  return result;
}

double pochhammer(double c, unsigned n) {
  double result = 1.0;
  for (unsigned j = 0; j < n; ++j) {
    result *= c + j;
  }
  return result;
}

std::complex<double> hyp2f1_terminating(unsigned k, unsigned l, HalfInteger c,
                                        std::complex<double> x) {
  const unsigned last = std::min(k, l);
  std::complex<double> sum = 1.0;
  std::complex<double> term = 1.0;
  for (unsigned n = 0; n < last; ++n) {
    // twice(c + n) == 0 exactly when c + n vanishes
    if (c.twice() + 2 * static_cast<int>(n) == 0) {
      throw PoleError("hyp2f1_terminating: (c)_n vanishes at n = " + std::to_string(n + 1) +
                      " before termination at n = " + std::to_string(last));
    }
    const double num = (static_cast<double>(n) - k) * (static_cast<double>(n) - l);
    const double den = (c.value() + n) * (n + 1.0);
    term *= (num / den) * x;
    sum += term;
  }
  return sum;
}

double hyp2f1_real(double a, double b, double c, double x) {
  if (is_nonpositive_integer(c)) {
    throw PoleError("hyp2f1_real: c = " + std::to_string(c) + " is a nonpositive integer");
  }
  if (!(x < 1.0)) {
    throw DomainError("hyp2f1_real: requires x < 1, got " + std::to_string(x));
  }
  if (x == 0.0) {
    return 1.0;
  }
  if (x > 0.0) {
    return hyp2f1_series(a, b, c, x);
  }
  const double w = x / (x - 1.0);
  return std::pow(1.0 - x, -a) * hyp2f1_series(a, c - b, c, w);
}

}  // namespace hgturb::specfun
