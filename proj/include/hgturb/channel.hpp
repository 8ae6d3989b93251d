#pragma once

#include <complex>
#include <numbers>
#include <optional>
#include <string_view>

namespace hgturb {

/// Geometry of the link. Lengths in metres.
struct OpticalConfig {
  double wavelength = 0.8e-6;
  double distance = 5000.0;
  /// Pump spot size at the crystal. The two-photon waist is sqrt(2) times this.
  double pump_waist = 0.1 / std::numbers::sqrt2;

  double wavenumber() const;
  /// Throws DomainError unless every length is positive and finite.
  void validate() const;
};

/// Turbulence given either as the refractive-index structure constant
/// Cn^2 [m^(-2/3)] or directly as the Rytov variance sigma_R^2.
class TurbulenceSpec {
 public:
  static TurbulenceSpec vacuum() { return from_rytov(0.0); }
  static TurbulenceSpec from_cn2(double cn2);
  static TurbulenceSpec from_rytov(double rytov);

  bool given_as_cn2() const { return kind_ == Kind::cn2; }
  /// The value as supplied (Cn^2 or sigma_R^2).
  double input_value() const { return value_; }

  double rytov(const OpticalConfig& cfg) const;
  double cn2(const OpticalConfig& cfg) const;
  double gamma(const OpticalConfig& cfg) const;

 private:
  enum class Kind { cn2, rytov };
  TurbulenceSpec(Kind kind, double value) : kind_(kind), value_(value) {}
  Kind kind_;
  double value_;
};

/// Beam radius W entering the mode-expansion kernel.
enum class BeamRadius {
  waist,       ///< W = W0
  propagated,  ///< W = W0 sqrt(1 + Lambda0^2); reproduces the published vacuum matrix
};

/// Convention for the Gaussian cross term feeding C3/C4.
enum class CrossTerm {
  as_printed,      ///< C3 = Im A2; matches the published matrices
  gaussian_exact,  ///< C3 = 2 Im A2; matches direct quadrature of the vacuum amplitude
};

struct ChannelOptions {
  BeamRadius beam_radius = BeamRadius::propagated;
  CrossTerm cross_term = CrossTerm::as_printed;
};

std::string_view to_string(BeamRadius value);
std::string_view to_string(CrossTerm value);
std::optional<BeamRadius> parse_beam_radius(std::string_view text);
std::optional<CrossTerm> parse_cross_term(std::string_view text);

/// The full constant cascade consumed by the probability kernels.
/// Inverse lengths are in 1/m^2; fresnel, zeta, gamma and c4 are dimensionless.
struct DerivedConstants {
  OpticalConfig config;
  ChannelOptions options;
  /// Present when the constants were derived from a TurbulenceSpec.
  std::optional<double> rytov;
  std::optional<double> cn2;

  double k = 0;        ///< wavenumber [1/m]
  double fresnel = 0;  ///< Lambda0 = 2z / (k W0^2)
  double w0 = 0;       ///< sqrt(2) * pump waist [m]
  double w = 0;        ///< beam radius W [m]
  std::complex<double> zeta;
  double gamma = 0;

  std::complex<double> a1;  // stored for completeness; no kernel reads it
  std::complex<double> a2;
  double a3 = 0;
  double b1 = 0;
  std::complex<double> b2;
  std::complex<double> b3;
  double b4 = 0;
  double c1 = 0;
  double c2 = 0;
  double c3 = 0;
  double c4 = 0;
};

/// sigma_R^2 = 1.23 Cn^2 k^(7/6) z^(11/6)
double rytov_variance(double cn2, double wavelength, double distance);
/// Algebraic inverse of rytov_variance.
double cn2_from_rytov(double rytov, double wavelength, double distance);
/// gamma = 1.63 (sigma_R^2)^(6/5)
double turbulence_strength(double rytov);

/// Throws DomainError for invalid geometry or gamma < 0, RegimeError if
/// C1 <= 0 or C2 <= 0.
DerivedConstants derive_constants(const OpticalConfig& cfg, double gamma,
                                  const ChannelOptions& options = {});
DerivedConstants derive_constants(const OpticalConfig& cfg, const TurbulenceSpec& turbulence,
                                  const ChannelOptions& options = {});

}  // namespace hgturb
