#include "hgturb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hgturb/compensated_sum.hpp"
#include "hgturb/errors.hpp"

namespace hgturb {

using cplx = std::complex<double>;

namespace {

constexpr unsigned kMinNodes = 64;
constexpr double kMinWindowInWaists = 5.0;
constexpr double kDefaultWindowInWaists = 6.0;
constexpr double kConvergenceTolerance = 1e-4;
constexpr unsigned kMaxOracleOrder = 4;

struct Amplitudes {
  std::vector<cplx> a;          // (max+1)^2, row-major in mu
  std::vector<double> scale;    // sum of |integrand terms| per entry
};

// Evaluates every A(mu, nu) for one node count. The tensor-product sum is
// regrouped as sum_r w_r g(r) U_mu(r) U_nu(r) with
// U_j(r) = sum_x w_x h_j(x) exp[ik (x - r)^2 / 2z]; the rule is unchanged.
Amplitudes evaluate(const OpticalConfig& cfg, const QuadratureSpec& spec, unsigned nodes,
                    unsigned max_order) {
  const GaussLegendre rule = gauss_legendre(nodes);
  const double hw = spec.half_width;
  std::vector<double> x(nodes);
  std::vector<double> w(nodes);
  for (unsigned j = 0; j < nodes; ++j) {
    x[j] = hw * rule.nodes[j];
    w[j] = hw * rule.weights[j];
  }
  const double half_kz = cfg.wavenumber() / (2.0 * cfg.distance);
  const unsigned modes = max_order + 1;

  // u[j * nodes + r] = U_j(x_r)
  std::vector<cplx> u(modes * nodes, 0.0);
  std::vector<double> weighted_mode(modes * nodes);
  for (unsigned j = 0; j < modes; ++j) {
    for (unsigned s = 0; s < nodes; ++s) {
      weighted_mode[j * nodes + s] = w[s] * hermite_gauss(j, x[s], spec.mode_waist);
    }
  }
  for (unsigned r = 0; r < nodes; ++r) {
    for (unsigned s = 0; s < nodes; ++s) {
      const double d = x[s] - x[r];
      const cplx phase = std::polar(1.0, half_kz * d * d);
      for (unsigned j = 0; j < modes; ++j) {
        u[j * nodes + r] += weighted_mode[j * nodes + s] * phase;
      }
    }
  }

  std::vector<double> pump(nodes);
  for (unsigned r = 0; r < nodes; ++r) {
    pump[r] = w[r] * std::exp(-x[r] * x[r] / (cfg.pump_waist * cfg.pump_waist));
  }

  Amplitudes out;
  out.a.resize(modes * modes);
  out.scale.resize(modes * modes);
  std::vector<cplx> terms(nodes);
  for (unsigned mu = 0; mu < modes; ++mu) {
    for (unsigned nu = 0; nu < modes; ++nu) {
      for (unsigned r = 0; r < nodes; ++r) {
        terms[r] = pump[r] * u[mu * nodes + r] * u[nu * nodes + r];
      }
      const ComplexSum sum = sum_descending(terms);
      out.a[mu * modes + nu] = sum.value;
      out.scale[mu * modes + nu] = sum.magnitude;
    }
  }
  return out;
}

}  // namespace

QuadratureSpec QuadratureSpec::for_geometry(const OpticalConfig& cfg,
                                            const ChannelOptions& options, unsigned nodes) {
  const DerivedConstants d = derive_constants(cfg, 0.0, options);
  return {kDefaultWindowInWaists * d.w, nodes, d.w};
}

void QuadratureSpec::validate() const {
  if (nodes < kMinNodes) {
    throw DomainError("quadrature needs at least " + std::to_string(kMinNodes) + " nodes");
  }
  if (!(mode_waist > 0.0) || !std::isfinite(mode_waist)) {
    throw DomainError("quadrature mode waist must be positive");
  }
  if (!(half_width >= kMinWindowInWaists * mode_waist) || !std::isfinite(half_width)) {
    throw DomainError("quadrature window must be at least 5 mode waists wide");
  }
}

GaussLegendre gauss_legendre(unsigned n) {
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (unsigned i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = t;
      for (unsigned k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double weight = 2.0 / ((1.0 - t * t) * dp * dp);
    rule.nodes[i] = -t;
    rule.nodes[n - 1 - i] = t;
    rule.weights[i] = weight;
    rule.weights[n - 1 - i] = weight;
  }
  return rule;
}

double hermite_gauss(unsigned j, double x, double waist) {
  // Normalized Hermite functions phi_j(y), y = sqrt2 x / w, by the stable
  // three-term recurrence; the Jacobian factor makes int h_j^2 dx = 1.
  const double y = std::numbers::sqrt2 * x / waist;
  double prev = 0.0;
  double cur = std::exp(-0.5 * y * y) / std::sqrt(std::sqrt(std::numbers::pi));
  for (unsigned k = 0; k < j; ++k) {
    const double next = std::sqrt(2.0 / (k + 1.0)) * y * cur - std::sqrt(k / (k + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur * std::sqrt(std::numbers::sqrt2 / waist);
}

VacuumOverlaps::VacuumOverlaps(const OpticalConfig& cfg, const QuadratureSpec& spec,
                               unsigned max_order)
    : max_order_(max_order) {
  cfg.validate();
  spec.validate();
  const Amplitudes coarse = evaluate(cfg, spec, spec.nodes, max_order);
  const Amplitudes fine = evaluate(cfg, spec, 2 * spec.nodes, max_order);
  coarse_ = coarse.a;
  change_.resize(coarse_.size());
  // Entries that vanish by parity are compared against the size of their
  // integrand instead of their own (roundoff-sized) value.
  double largest = 0.0;
  for (const auto& v : fine.a) largest = std::max(largest, std::abs(v));
  for (std::size_t j = 0; j < coarse_.size(); ++j) {
    const double denom = std::max({std::abs(fine.a[j]), 1e-8 * fine.scale[j], 1e-12 * largest});
    change_[j] = std::abs(coarse.a[j] - fine.a[j]) / denom;
    if (change_[j] > kConvergenceTolerance) {
      throw QuadratureResolutionError(
          "quadrature not converged for A(" + std::to_string(j / (max_order + 1)) + "," +
          std::to_string(j % (max_order + 1)) + "): relative change " +
          std::to_string(change_[j]) + " under node doubling");
    }
  }
}

cplx VacuumOverlaps::overlap(unsigned mu, unsigned nu) const {
  if (mu > max_order_ || nu > max_order_) {
    throw DomainError("overlap order exceeds the table's max_order");
  }
  return coarse_[mu * (max_order_ + 1) + nu];
}

double VacuumOverlaps::self_convergence(unsigned mu, unsigned nu) const {
  if (mu > max_order_ || nu > max_order_) {
    throw DomainError("overlap order exceeds the table's max_order");
  }
  return change_[mu * (max_order_ + 1) + nu];
}

cplx vacuum_overlap_1d(unsigned mu, unsigned nu, const OpticalConfig& cfg,
                       const QuadratureSpec& spec) {
  return VacuumOverlaps(cfg, spec, std::max(mu, nu)).overlap(mu, nu);
}

double vacuum_probability_oracle(const ModePair& pair, const VacuumOverlaps& overlaps,
                                 double reference_value) {
  const unsigned order =
      std::max({pair.signal.m, pair.signal.n, pair.idler.m, pair.idler.n});
  if (order > kMaxOracleOrder) {
    throw DomainError("oracle supports mode orders up to " + std::to_string(kMaxOracleOrder));
  }
  const double a00 = std::norm(overlaps.overlap(0, 0));
  const double x = std::norm(overlaps.overlap(pair.signal.m, pair.idler.m));
  const double y = std::norm(overlaps.overlap(pair.signal.n, pair.idler.n));
  return reference_value * (x / a00) * (y / a00);
}

double vacuum_probability_oracle(const ModePair& pair, const OpticalConfig& cfg,
                                 const QuadratureSpec& spec, double reference_value) {
  const unsigned order =
      std::max({pair.signal.m, pair.signal.n, pair.idler.m, pair.idler.n});
  if (order > kMaxOracleOrder) {
    throw DomainError("oracle supports mode orders up to " + std::to_string(kMaxOracleOrder));
  }
  return vacuum_probability_oracle(pair, VacuumOverlaps(cfg, spec, order), reference_value);
}

}  // namespace hgturb
