#pragma once

#include <complex>

namespace hgturb::specfun {

/// Exact representation of an integer or half-odd-integer as twice its value.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  constexpr explicit HalfInteger(int twice_value) : twice_(twice_value) {}

  static constexpr HalfInteger whole(int n) { return HalfInteger(2 * n); }
  /// numerator / 2
  static constexpr HalfInteger halves(int numerator) { return HalfInteger(numerator); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  friend constexpr bool operator==(HalfInteger, HalfInteger) = default;

 private:
  int twice_ = 0;
};

/// Gamma at a positive integer or half-odd-integer, by exact upward
/// recursion from Gamma(1) = 1 or Gamma(1/2) = sqrt(pi).
/// Throws DomainError for x <= 0.
double gamma_half(HalfInteger x);

/// Rising factorial c (c+1) ... (c+n-1); 1 for n = 0.
double pochhammer(double c, unsigned n);

/// Terminating 2F1(-k, -l; c; x) = sum_{n<=min(k,l)} (-k)_n (-l)_n / ((c)_n n!) x^n.
/// Throws PoleError if (c)_n vanishes before the series terminates.
std::complex<double> hyp2f1_terminating(unsigned k, unsigned l, HalfInteger c,
                                        std::complex<double> x);

/// Real Gauss hypergeometric 2F1(a, b; c; x) for x < 1.
///
/// For 0 <= x < 1 the power series is summed directly. For x < 0 the Pfaff
/// transformation
///   2F1(a, b; c; x) = (1 - x)^(-a) 2F1(a, c - b; c; x / (x - 1))
/// maps the argument into [0, 1) first.
///
/// Throws PoleError if c is a nonpositive integer, DomainError if x >= 1 and
/// NumericalFailure if the series has not converged after 10000 terms.
double hyp2f1_real(double a, double b, double c, double x);

}  // namespace hgturb::specfun
