#include <gtest/gtest.h>

#include <cmath>

#include "hgturb/engine.hpp"
#include "hgturb/errors.hpp"
#include "hgturb/oracle.hpp"

using namespace hgturb;

namespace {

DerivedConstants vacuum() { return derive_constants(OpticalConfig{}, 0.0); }
DerivedConstants weak() { return derive_constants(OpticalConfig{}, TurbulenceSpec::from_rytov(0.02)); }

}  // namespace

TEST(ModeLabels, RoundTrip) {
  EXPECT_EQ(label(ModeIndex{1, 2}), "12");
  EXPECT_EQ(label(ModeIndex{10, 3}), "10_3");
  EXPECT_EQ(parse_mode("12"), (ModeIndex{1, 2}));
  EXPECT_EQ(parse_mode("0_11"), (ModeIndex{0, 11}));
  EXPECT_FALSE(parse_mode("0x").has_value());
  EXPECT_FALSE(parse_mode("123").has_value());
  EXPECT_FALSE(parse_mode("").has_value());
  EXPECT_EQ(label(ModePair{{0, 0}, {0, 2}}), "(00,02)");
  EXPECT_EQ(parse_pair("00:02"), (ModePair{{0, 0}, {0, 2}}));
  EXPECT_FALSE(parse_pair("00-02").has_value());
}

TEST(ModeLabels, Ordering) {
  const auto modes = modes_up_to_order(2);
  const std::vector<ModeIndex> expected = {{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
  EXPECT_EQ(modes, expected);
  const auto ten = default_mode_ordering();
  ASSERT_EQ(ten.size(), 10u);
  EXPECT_EQ(label(ten[6]), "03");
  EXPECT_EQ(label(ten[9]), "30");
  EXPECT_EQ(modes_up_to_order(0).size(), 1u);
}

TEST(Kernels, Sigma) {
  EXPECT_EQ(sigma(0, 0), 2);
  EXPECT_EQ(sigma(1, 1), -2);
  EXPECT_EQ(sigma(1, 0), 0);
  EXPECT_EQ(sigma(2, 3), 0);
}

TEST(Kernels, FVanishesWithSigma) {
  const DerivedConstants d = vacuum();
  for (unsigned k = 0; k <= 3; ++k) {
    for (unsigned l = 0; l <= 3; ++l) {
      const auto f = f_kernel(3, 3, k, l, d);
      if (sigma(k, l) == 0) {
        EXPECT_EQ(f, std::complex<double>(0.0, 0.0));
      } else {
        EXPECT_GT(std::abs(f), 0.0);
      }
    }
  }
  EXPECT_THROW(f_kernel(1, 1, 2, 0, d), DomainError);
}

TEST(Kernels, KVanishesForOddTotal) {
  const DerivedConstants d = weak();
  EXPECT_EQ(k_kernel(1, 2, d), std::complex<double>(0.0, 0.0));
  EXPECT_EQ(k_kernel(0, 3, d), std::complex<double>(0.0, 0.0));
  EXPECT_GT(std::abs(k_kernel(2, 2, d)), 0.0);
}

TEST(Kernels, KIsHermitian) {
  const DerivedConstants d = weak();
  for (unsigned a = 0; a <= 6; ++a) {
    for (unsigned b = 0; b <= 6; ++b) {
      const auto x = k_kernel(a, b, d);
      const auto y = std::conj(k_kernel(b, a, d));
      EXPECT_NEAR(std::abs(x - y), 0.0, 1e-12 * std::abs(x));
    }
  }
}

TEST(Pi, SymmetricAndNonNegative) {
  for (const auto& d : {vacuum(), weak()}) {
    for (unsigned mu = 0; mu <= 6; ++mu) {
      for (unsigned nu = 0; nu <= 6; ++nu) {
        const double a = pi_factor(mu, nu, d);
        const double b = pi_factor(nu, mu, d);
        EXPECT_GE(a, 0.0);
        EXPECT_NEAR(a, b, 1e-12 * std::max(a, b));
      }
    }
  }
}

TEST(Pi, VacuumParitySelection) {
  const DerivedConstants d = vacuum();
  for (unsigned mu = 0; mu <= 10; ++mu) {
    for (unsigned nu = 0; nu <= 10; ++nu) {
      const double v = pi_factor(mu, nu, d);
      if ((mu + nu) % 2 == 1) {
        EXPECT_EQ(v, 0.0) << mu << "," << nu;
      } else {
        EXPECT_GT(v, 0.0) << mu << "," << nu;
      }
    }
  }
}

TEST(Pi, TurbulenceOpensOddChannels) {
  const DerivedConstants d = weak();
  EXPECT_GT(pi_factor(0, 1, d), 0.0);
  EXPECT_GT(pi_factor(1, 2, d), 0.0);
}

TEST(Pi, RealnessResidual) {
  const DerivedConstants d = weak();
  for (unsigned mu = 0; mu <= 10; ++mu) {
    for (unsigned nu = 0; nu <= 10; ++nu) {
      EXPECT_LE(evaluate_pi(mu, nu, d).imaginary_residual, 1e-10);
    }
  }
}

// The exact-cross-term variant against brute-force quadrature of the vacuum
// amplitude; the quadrature knows nothing about F, K or 2F1.
TEST(Pi, ExactCrossTermMatchesQuadrature) {
  ChannelOptions options;
  options.cross_term = CrossTerm::gaussian_exact;
  const OpticalConfig cfg;
  const DerivedConstants d = derive_constants(cfg, 0.0, options);
  const VacuumOverlaps overlaps(cfg, QuadratureSpec::for_geometry(cfg, options, 256), 4);
  const double p00 = pi_factor(0, 0, d);
  const double a00 = std::norm(overlaps.overlap(0, 0));
  for (unsigned mu = 0; mu <= 4; ++mu) {
    for (unsigned nu = 0; nu <= 4; ++nu) {
      if ((mu + nu) % 2) continue;
      const double engine = pi_factor(mu, nu, d) / p00;
      const double quad = std::norm(overlaps.overlap(mu, nu)) / a00;
      EXPECT_NEAR(engine / quad, 1.0, 1e-8) << mu << "," << nu;
    }
  }
}

TEST(Pi, PrintedCrossTermDeviatesFromQuadrature) {
  const OpticalConfig cfg;
  const DerivedConstants d = derive_constants(cfg, 0.0);
  const VacuumOverlaps overlaps(cfg, QuadratureSpec::for_geometry(cfg, {}, 256), 2);
  const double engine = pi_factor(0, 2, d) / pi_factor(0, 0, d);
  const double quad = std::norm(overlaps.overlap(0, 2)) / std::norm(overlaps.overlap(0, 0));
  EXPECT_GT(std::abs(engine / quad - 1.0), 1e-2);
}

TEST(Pi, HighOrderStaysFinite) {
  const DerivedConstants d = vacuum();
  EXPECT_EQ(pi_factor(9, 10, d), 0.0);
  EXPECT_GT(pi_factor(10, 10, d), 0.0);
  EXPECT_TRUE(std::isfinite(pi_factor(10, 10, weak())));
}

TEST(SelectionRules, FundamentalPump) {
  EXPECT_TRUE(selection_rule_allowed({{0, 0}, {0, 0}}));
  EXPECT_TRUE(selection_rule_allowed({{0, 0}, {0, 2}}));
  EXPECT_TRUE(selection_rule_allowed({{1, 2}, {1, 0}}));
  EXPECT_FALSE(selection_rule_allowed({{0, 0}, {0, 1}}));
  EXPECT_FALSE(selection_rule_allowed({{1, 1}, {0, 0}}));
}

TEST(SelectionRules, ExcitedPump) {
  EXPECT_TRUE(selection_rule_allowed({{1, 0}, {0, 0}}, {1, 0}));
  EXPECT_FALSE(selection_rule_allowed({{0, 0}, {0, 0}}, {1, 0}));
  EXPECT_FALSE(selection_rule_allowed({{0, 0}, {0, 0}}, {2, 0}));
  EXPECT_TRUE(selection_rule_allowed({{1, 0}, {1, 0}}, {2, 0}));
}

TEST(Model, MemoizesPiFactors) {
  const ProbabilityModel model(weak());
  const auto modes = default_mode_ordering();
  const ProbabilityMatrix m = probability_matrix(modes, model);
  EXPECT_EQ(m.size(), 10u);
  EXPECT_LE(model.evaluations(), 16u);
  EXPECT_EQ(model.joint_probability({{1, 2}, {0, 3}}),
            model.pi(1, 0) * model.pi(2, 3));
}

TEST(Model, OrderCap) {
  const ProbabilityModel model(vacuum(), 4);
  EXPECT_NO_THROW(model.pi(4, 4));
  EXPECT_THROW(model.pi(5, 0), DomainError);
}

TEST(Matrix, CalibratedAnchor) {
  const ProbabilityModel model(vacuum());
  const auto modes = default_mode_ordering();
  const ProbabilityMatrix m = probability_matrix(modes, model);
  EXPECT_NEAR(m.at(0, 0), kVacuumReferenceValue, 1e-15);
  EXPECT_NEAR(m.scale * m.raw_reference, kVacuumReferenceValue, 1e-15);
}

TEST(Matrix, RawIsUnscaled) {
  const ProbabilityModel model(weak());
  const auto modes = modes_up_to_order(1);
  const ProbabilityMatrix m = probability_matrix(modes, model, Normalization::raw());
  EXPECT_EQ(m.scale, 1.0);
  EXPECT_EQ(m.at(0, 0), model.joint_probability({}));
}

TEST(Matrix, CalibrationUsesVacuumReference) {
  const ProbabilityModel vac(vacuum());
  const ProbabilityModel turb(weak());
  const auto modes = modes_up_to_order(1);
  const ProbabilityMatrix a = probability_matrix(modes, vac);
  const ProbabilityMatrix b = probability_matrix(modes, turb);
  EXPECT_EQ(a.scale, b.scale);
  EXPECT_LT(b.at(0, 0), a.at(0, 0));
}

TEST(Matrix, ThreadCountDoesNotChangeValues) {
  const auto modes = modes_up_to_order(6);
  const ProbabilityModel serial(weak());
  const ProbabilityModel parallel(weak());
  const ProbabilityMatrix a = probability_matrix(modes, serial, {}, 1);
  const ProbabilityMatrix b = probability_matrix(modes, parallel, {}, 8);
  EXPECT_EQ(a.values, b.values);
}

TEST(Matrix, Errors) {
  const ProbabilityModel model(vacuum());
  std::vector<ModeIndex> none;
  EXPECT_THROW(probability_matrix(none, model), DomainError);
  Normalization bad;
  bad.reference = {{0, 0}, {0, 1}};
  const auto modes = modes_up_to_order(1);
  EXPECT_THROW(probability_matrix(modes, model, bad), CalibrationError);
}
