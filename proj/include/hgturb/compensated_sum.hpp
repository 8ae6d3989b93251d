#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace hgturb {

/// Neumaier's variant of Kahan summation; also tolerant of addends larger
/// than the running sum.
class CompensatedSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) {
    add(value);
    return *this;
  }

  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

struct ComplexSum {
  std::complex<double> value;
  /// Sum of |term|; scale of the rounding error of the result.
  double magnitude = 0.0;
};

/// Sums complex terms in order of decreasing magnitude with compensated
/// addition on each component. Reorders `terms` in place; ties keep their
/// original relative order so the result is deterministic.
inline ComplexSum sum_descending(std::vector<std::complex<double>>& terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return std::abs(a) > std::abs(b); });
  CompensatedSum re;
  CompensatedSum im;
  CompensatedSum mag;
  for (const auto& t : terms) {
    re += t.real();
    im += t.imag();
    mag += std::abs(t);
  }
  return {{re.value(), im.value()}, mag.value()};
}

}  // namespace hgturb
