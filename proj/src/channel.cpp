#include "hgturb/channel.hpp"

#include <cmath>
#include <string>

#include "hgturb/errors.hpp"

namespace hgturb {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(value));
  }
}

void require_nonnegative(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(name) + " must be nonnegative and finite, got " +
                      std::to_string(value));
  }
}

// 1.23 k^(7/6) z^(11/6)
double rytov_coefficient(double wavelength, double distance) {
  const double k = 2.0 * std::numbers::pi / wavelength;
  return 1.23 * std::pow(k, 7.0 / 6.0) * std::pow(distance, 11.0 / 6.0);
}

}  // namespace

double OpticalConfig::wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }

void OpticalConfig::validate() const {
  require_positive(wavelength, "wavelength");
  require_positive(distance, "distance");
  require_positive(pump_waist, "pump waist");
}

TurbulenceSpec TurbulenceSpec::from_cn2(double cn2) {
  require_nonnegative(cn2, "Cn^2");
  return {Kind::cn2, cn2};
}

TurbulenceSpec TurbulenceSpec::from_rytov(double rytov) {
  require_nonnegative(rytov, "Rytov variance");
  return {Kind::rytov, rytov};
}

double TurbulenceSpec::rytov(const OpticalConfig& cfg) const {
  return kind_ == Kind::rytov ? value_ : rytov_variance(value_, cfg.wavelength, cfg.distance);
}

double TurbulenceSpec::cn2(const OpticalConfig& cfg) const {
  return kind_ == Kind::cn2 ? value_ : cn2_from_rytov(value_, cfg.wavelength, cfg.distance);
}

double TurbulenceSpec::gamma(const OpticalConfig& cfg) const {
  return turbulence_strength(rytov(cfg));
}

std::string_view to_string(BeamRadius value) {
  return value == BeamRadius::waist ? "waist" : "propagated";
}

std::string_view to_string(CrossTerm value) {
  return value == CrossTerm::as_printed ? "as_printed" : "gaussian_exact";
}

std::optional<BeamRadius> parse_beam_radius(std::string_view text) {
  if (text == "waist") return BeamRadius::waist;
  if (text == "propagated") return BeamRadius::propagated;
  return std::nullopt;
}

std::optional<CrossTerm> parse_cross_term(std::string_view text) {
  if (text == "as_printed") return CrossTerm::as_printed;
  if (text == "gaussian_exact") return CrossTerm::gaussian_exact;
  return std::nullopt;
}

double rytov_variance(double cn2, double wavelength, double distance) {
  require_nonnegative(cn2, "Cn^2");
  require_positive(wavelength, "wavelength");
  require_positive(distance, "distance");
  return cn2 * rytov_coefficient(wavelength, distance);
}

double cn2_from_rytov(double rytov, double wavelength, double distance) {
  require_nonnegative(rytov, "Rytov variance");
  require_positive(wavelength, "wavelength");
  require_positive(distance, "distance");
  return rytov / rytov_coefficient(wavelength, distance);
}

double turbulence_strength(double rytov) {
  require_nonnegative(rytov, "Rytov variance");
  return 1.63 * std::pow(rytov, 6.0 / 5.0);
}

DerivedConstants derive_constants(const OpticalConfig& cfg, double gamma,
                                  const ChannelOptions& options) {
  cfg.validate();
  require_nonnegative(gamma, "gamma");

  DerivedConstants d;
  d.config = cfg;
  d.options = options;
  d.gamma = gamma;
  d.k = cfg.wavenumber();
  d.w0 = std::numbers::sqrt2 * cfg.pump_waist;

  const double z = cfg.distance;
  const double L = 2.0 * z / (d.k * d.w0 * d.w0);
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw DomainError("Fresnel ratio must be positive and finite, got " + std::to_string(L));
  }
  d.fresnel = L;

  const double L2 = L * L;
  const double kz = d.k / z;
  const std::complex<double> i(0.0, 1.0);

  d.zeta = (1.0 + L2) / std::complex<double>(1.0 + L2, L);
  d.w = options.beam_radius == BeamRadius::propagated ? d.w0 * std::sqrt(1.0 + L2) : d.w0;

  d.b1 = kz * (1.0 / (2.0 * L) + L / 2.0 + gamma);
  d.b2 = kz * std::complex<double>(1.0 / L - gamma, -1.0);
  d.b3 = kz * std::complex<double>(1.0 / (2.0 * L) + gamma, -1.0);
  d.b4 = kz * (1.0 / L + 2.0 * gamma);

  d.a1 = (d.k / (4.0 * z)) * (L / (1.0 + L2) - i);
  d.a2 = -d.b2 * d.b2 / (4.0 * d.b1) + d.b3 + kz * L / (1.0 + L2);
  d.a3 = -std::norm(d.b2) / (2.0 * d.b1) + d.b4;

  d.c1 = d.a2.real() - d.a3 / 2.0;
  d.c2 = d.a2.real() + d.a3 / 2.0;
  d.c3 = options.cross_term == CrossTerm::as_printed ? d.a2.imag() : 2.0 * d.a2.imag();
  if (!(d.c1 > 0.0) || !(d.c2 > 0.0)) {
    throw RegimeError("C1 and C2 must be positive (C1 = " + std::to_string(d.c1) +
                      ", C2 = " + std::to_string(d.c2) + "); parameters outside the closed form's "
                      "range of validity");
  }
  d.c4 = -d.c3 * d.c3 / (4.0 * d.c1 * d.c2);
  return d;
}

DerivedConstants derive_constants(const OpticalConfig& cfg, const TurbulenceSpec& turbulence,
                                  const ChannelOptions& options) {
  cfg.validate();
  DerivedConstants d = derive_constants(cfg, turbulence.gamma(cfg), options);
  d.rytov = turbulence.rytov(cfg);
  d.cn2 = turbulence.cn2(cfg);
  return d;
}

}  // namespace hgturb
