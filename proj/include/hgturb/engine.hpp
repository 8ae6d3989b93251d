#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hgturb/channel.hpp"

namespace hgturb {

/// P(00,00) of the published vacuum matrix; default calibration anchor.
inline constexpr double kVacuumReferenceValue = 0.31307;
inline constexpr unsigned kDefaultMaxOrder = 10;

/// Transverse Hermite-Gaussian orders (m along x, n along y).
struct ModeIndex {
  unsigned m = 0;
  unsigned n = 0;

  constexpr unsigned order() const { return m + n; }
  friend constexpr auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

struct ModePair {
  ModeIndex signal;
  ModeIndex idler;

  friend constexpr auto operator<=>(const ModePair&, const ModePair&) = default;
};

/// "mn" when both orders are single digits, "m_n" otherwise.
std::string label(ModeIndex mode);
/// Accepts "mn" (two digits) or "m_n".
std::optional<ModeIndex> parse_mode(std::string_view text);
/// "(ss,ii)"
std::string label(const ModePair& pair);
/// Accepts "ss:ii" with each side in parse_mode syntax.
std::optional<ModePair> parse_pair(std::string_view text);

/// All modes with m + n <= max_sum, ascending total order then ascending m:
/// 00, 01, 10, 02, 11, 20, ...
std::vector<ModeIndex> modes_up_to_order(unsigned max_sum);
/// The ten-mode ordering used by the published matrices (max_sum = 3).
std::vector<ModeIndex> default_mode_ordering();

/// (-1)^k + (-1)^l
int sigma(int k, int l);

/// Expansion coefficient F(mu, nu, k, l). Exactly zero when sigma(k, l) == 0.
/// Requires k <= mu and l <= nu (DomainError otherwise).
std::complex<double> f_kernel(unsigned mu, unsigned nu, unsigned k, unsigned l,
                              const DerivedConstants& consts);

/// Gaussian moment kernel K(a, b). Exactly zero when a + b is odd.
std::complex<double> k_kernel(unsigned a, unsigned b, const DerivedConstants& consts);

struct PiEvaluation {
  double value = 0;
  /// |Im| of the quadruple sum relative to max(|Re|, rounding floor).
  double imaginary_residual = 0;
};

/// One factor Pi(mu, nu) of the joint probability, with diagnostics.
/// Values below the quadruple sum's rounding floor are reported as exactly 0.
/// Throws NumericalFailure if the imaginary residual exceeds 1e-10 relative
/// or the result is significantly negative.
PiEvaluation evaluate_pi(unsigned mu, unsigned nu, const DerivedConstants& consts);
double pi_factor(unsigned mu, unsigned nu, const DerivedConstants& consts);

/// Parity and order selection rules for down-conversion from `pump`.
bool selection_rule_allowed(const ModePair& pair, ModeIndex pump = {});

/// Joint probabilities for one channel. Pi(mu, nu) is memoized, so an N-mode
/// matrix costs O(N) distinct Pi evaluations. Concurrent calls are safe.
class ProbabilityModel {
 public:
  explicit ProbabilityModel(DerivedConstants consts, unsigned max_order = kDefaultMaxOrder);
  ~ProbabilityModel();
  ProbabilityModel(ProbabilityModel&&) noexcept;
  ProbabilityModel& operator=(ProbabilityModel&&) noexcept;

  const DerivedConstants& constants() const { return consts_; }
  unsigned max_order() const { return max_order_; }

  /// Throws DomainError for orders above max_order.
  double pi(unsigned mu, unsigned nu) const;
  /// Pi(m_s, m_i) * Pi(n_s, n_i)
  double joint_probability(const ModePair& pair) const;

  /// Largest imaginary residual among the Pi evaluated so far.
  double max_imaginary_residual() const;
  std::size_t evaluations() const;

 private:
  struct Cache;
  DerivedConstants consts_;
  unsigned max_order_;
  std::unique_ptr<Cache> cache_;
};

struct Normalization {
  enum class Mode { raw, calibrated };

  Mode mode = Mode::calibrated;
  /// The reference is always evaluated in vacuum for the same geometry.
  ModePair reference{};
  double reference_value = kVacuumReferenceValue;

  static Normalization raw() { return {Mode::raw, {}, kVacuumReferenceValue}; }
};

std::string_view to_string(Normalization::Mode mode);

struct ProbabilityMatrix {
  std::vector<ModeIndex> ordering;
  /// Row-major; row = signal mode, column = idler mode.
  std::vector<double> values;
  DerivedConstants params;
  Normalization normalization;
  /// Factor applied to every raw value (1 when raw).
  double scale = 1.0;
  /// Raw vacuum probability at the reference pair.
  double raw_reference = 0.0;

  std::size_t size() const { return ordering.size(); }
  double at(std::size_t signal, std::size_t idler) const { return values[signal * size() + idler]; }
  double max_value() const;
};

/// Global factor mapping raw probabilities onto the calibrated scale: the
/// vacuum probability of `norm.reference` for the geometry in `consts` is
/// sent to `norm.reference_value`. Throws CalibrationError if that vacuum
/// probability is not positive.
double calibration_scale(const DerivedConstants& consts, const Normalization& norm,
                         double* raw_reference = nullptr);

/// Fills every ordered (signal, idler) pair. With threads > 1 the distinct Pi
/// factors are evaluated in parallel; output is bit-identical to serial.
ProbabilityMatrix probability_matrix(std::span<const ModeIndex> modes,
                                     const ProbabilityModel& model,
                                     const Normalization& norm = {}, unsigned threads = 1);

}  // namespace hgturb
