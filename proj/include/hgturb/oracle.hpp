#pragma once

#include <complex>
#include <vector>

#include "hgturb/channel.hpp"
#include "hgturb/engine.hpp"

namespace hgturb {

/// Tensor-product Gauss-Legendre rule over [-half_width, half_width] per
/// integration variable.
struct QuadratureSpec {
  double half_width = 0.0;  ///< [m]
  unsigned nodes = 512;     ///< points per dimension
  double mode_waist = 0.0;  ///< waist of the detection-plane HG modes [m]

  /// Detection waist = beam radius W of the channel geometry, window = 6 W.
  static QuadratureSpec for_geometry(const OpticalConfig& cfg, const ChannelOptions& options = {},
                                     unsigned nodes = 512);
  /// Throws DomainError unless nodes >= 64 and half_width >= 5 * mode_waist.
  void validate() const;
};

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(unsigned n);

/// L2-normalized 1-D Hermite-Gaussian mode H_j(sqrt2 x / w) exp(-x^2 / w^2).
double hermite_gauss(unsigned j, double x, double waist);

/// Vacuum two-photon overlaps per Cartesian axis,
///   A(mu, nu) = int dx1 dx2 h_mu(x1) h_nu(x2) int dr g(r) exp[ik/2z ((x1-r)^2 + (x2-r)^2)],
/// with g the Gaussian pump at the crystal. Every value is computed at the
/// requested node count and again at twice as many nodes; a relative change
/// above 1e-4 throws QuadratureResolutionError.
class VacuumOverlaps {
 public:
  VacuumOverlaps(const OpticalConfig& cfg, const QuadratureSpec& spec, unsigned max_order);

  unsigned max_order() const { return max_order_; }
  std::complex<double> overlap(unsigned mu, unsigned nu) const;
  /// Relative change of A(mu, nu) under node doubling.
  double self_convergence(unsigned mu, unsigned nu) const;

 private:
  unsigned max_order_;
  std::vector<std::complex<double>> coarse_;
  std::vector<double> change_;
};

std::complex<double> vacuum_overlap_1d(unsigned mu, unsigned nu, const OpticalConfig& cfg,
                                       const QuadratureSpec& spec);

/// Brute-force vacuum joint probability |A(m_s,m_i)|^2 |A(n_s,n_i)|^2 scaled so
/// the (00,00) pair equals `reference_value` (the engine's calibrated P(00,00)).
/// Mode orders are limited to 4.
double vacuum_probability_oracle(const ModePair& pair, const OpticalConfig& cfg,
                                 const QuadratureSpec& spec,
                                 double reference_value = kVacuumReferenceValue);

/// Same as vacuum_probability_oracle over a precomputed overlap table.
double vacuum_probability_oracle(const ModePair& pair, const VacuumOverlaps& overlaps,
                                 double reference_value = kVacuumReferenceValue);

}  // namespace hgturb
