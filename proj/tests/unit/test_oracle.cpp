#include <gtest/gtest.h>

#include <cmath>

#include "hgturb/errors.hpp"
#include "hgturb/oracle.hpp"

using namespace hgturb;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  const unsigned n = 12;
  const GaussLegendre rule = gauss_legendre(n);
  double total = 0.0;
  for (double w : rule.weights) total += w;
  EXPECT_NEAR(total, 2.0, 1e-14);
  for (unsigned p = 0; p < 2 * n; ++p) {
    double sum = 0.0;
    for (unsigned j = 0; j < n; ++j) sum += rule.weights[j] * std::pow(rule.nodes[j], p);
    const double exact = p % 2 ? 0.0 : 2.0 / (p + 1.0);
    EXPECT_NEAR(sum, exact, 1e-14) << "degree " << p;
  }
  for (unsigned j = 1; j < n; ++j) EXPECT_LT(rule.nodes[j - 1], rule.nodes[j]);
}

TEST(HermiteGauss, Orthonormal) {
  const double waist = 0.1;
  const GaussLegendre rule = gauss_legendre(400);
  const double hw = 8.0 * waist;
  for (unsigned a = 0; a <= 6; ++a) {
    for (unsigned b = 0; b <= 6; ++b) {
      double sum = 0.0;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double x = hw * rule.nodes[j];
        sum += hw * rule.weights[j] * hermite_gauss(a, x, waist) * hermite_gauss(b, x, waist);
      }
      EXPECT_NEAR(sum, a == b ? 1.0 : 0.0, 1e-12) << a << "," << b;
    }
  }
}

TEST(HermiteGauss, LowOrderClosedForms) {
  const double w = 0.2;
  const double x = 0.05;
  const double g = std::exp(-x * x / (w * w));
  const double norm0 = std::pow(2.0 / (M_PI * w * w), 0.25);
  EXPECT_NEAR(hermite_gauss(0, x, w), norm0 * g, 1e-14);
  // H1(y) = 2y with y = sqrt2 x / w, normalization 1/sqrt(2)
  EXPECT_NEAR(hermite_gauss(1, x, w), norm0 * g * 2.0 * std::sqrt(2.0) * x / w / std::sqrt(2.0),
              1e-14);
}

TEST(QuadratureSpec, Validation) {
  QuadratureSpec spec = QuadratureSpec::for_geometry(OpticalConfig{});
  EXPECT_NO_THROW(spec.validate());
  EXPECT_NEAR(spec.half_width, 6.0 * spec.mode_waist, 1e-15);
  QuadratureSpec few = spec;
  few.nodes = 32;
  EXPECT_THROW(few.validate(), DomainError);
  QuadratureSpec narrow = spec;
  narrow.half_width = 4.0 * spec.mode_waist;
  EXPECT_THROW(narrow.validate(), DomainError);
}

TEST(VacuumOverlaps, SymmetryParityAndConvergence) {
  const OpticalConfig cfg;
  const VacuumOverlaps overlaps(cfg, QuadratureSpec::for_geometry(cfg, {}, 256), 3);
  const double scale = std::abs(overlaps.overlap(0, 0));
  for (unsigned a = 0; a <= 3; ++a) {
    for (unsigned b = 0; b <= 3; ++b) {
      EXPECT_NEAR(std::abs(overlaps.overlap(a, b) - overlaps.overlap(b, a)), 0.0, 1e-10 * scale);
      if ((a + b) % 2) EXPECT_LT(std::abs(overlaps.overlap(a, b)), 1e-10 * scale);
      EXPECT_LT(overlaps.self_convergence(a, b), 1e-4);
    }
  }
  EXPECT_THROW(overlaps.overlap(4, 0), DomainError);
}

TEST(VacuumOverlaps, UnderResolvedWindowIsReported) {
  const OpticalConfig cfg;
  QuadratureSpec spec = QuadratureSpec::for_geometry(cfg, {}, 64);
  spec.half_width = 40.0 * spec.mode_waist;
  EXPECT_THROW(VacuumOverlaps(cfg, spec, 2), QuadratureResolutionError);
}

TEST(Oracle, AnchorAndLimits) {
  const OpticalConfig cfg;
  const QuadratureSpec spec = QuadratureSpec::for_geometry(cfg, {}, 256);
  EXPECT_NEAR(vacuum_probability_oracle({}, cfg, spec), kVacuumReferenceValue, 1e-15);
  EXPECT_NEAR(vacuum_probability_oracle({}, cfg, spec, 2.0), 2.0, 1e-15);
  EXPECT_THROW(vacuum_probability_oracle({{5, 0}, {0, 0}}, cfg, spec), DomainError);
}

TEST(Oracle, ForbiddenPairsVanish) {
  const OpticalConfig cfg;
  const QuadratureSpec spec = QuadratureSpec::for_geometry(cfg, {}, 256);
  EXPECT_LT(vacuum_probability_oracle({{0, 0}, {0, 1}}, cfg, spec), 1e-12);
  EXPECT_GT(vacuum_probability_oracle({{0, 0}, {0, 2}}, cfg, spec), 1e-3);
}
