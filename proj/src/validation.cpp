#include "hgturb/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hgturb/errors.hpp"
#include "hgturb/oracle.hpp"
#include "hgturb/reference.hpp"
#include "hgturb/specfun.hpp"
#include "json.hpp"

namespace hgturb::validation {

namespace {

constexpr double kGoldenTolerance = 5e-4;
constexpr double kTinyEntryTolerance = 5e-6;
constexpr double kZeroFraction = 1e-6;
constexpr double kGoldenSeconds = 1.0;
constexpr double kOracleTolerance = 1e-2;
constexpr double kOracleConvergence = 1e-4;
constexpr double kOracleSeconds = 60.0;
constexpr double kSymmetryTolerance = 1e-10;
constexpr double kRealnessTolerance = 1e-10;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format(double value) {
  std::ostringstream s;
  s.precision(6);
  s << value;
  return s.str();
}

// Runs `body`, converting library errors into a failed result.
CriterionResult guarded(int id, std::string name, double tolerance,
                        const std::function<void(CriterionResult&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.tolerance = tolerance;
  const auto start = Clock::now();
  try {
    body(r);
  } catch (const Error& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = seconds_since(start);
  return r;
}

CriterionResult skipped(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.passed = true;
  r.skipped = true;
  r.detail = "skipped (vacuum only)";
  return r;
}

ProbabilityModel vacuum_model(const Options& o) {
  return ProbabilityModel(derive_constants(o.config, TurbulenceSpec::vacuum(), o.channel));
}

ProbabilityModel turbulent_model(const Options& o, double rytov) {
  DerivedConstants d =
      derive_constants(o.config, turbulence_strength(rytov) * o.gamma_scale, o.channel);
  d.rytov = rytov;
  d.cn2 = cn2_from_rytov(rytov, o.config.wavelength, o.config.distance);
  return ProbabilityModel(std::move(d));
}

struct GoldenComparison {
  double max_deviation = 0.0;   // over entries with the standard tolerance
  double tiny_deviation = 0.0;  // over published entries below 1e-5
  double zero_excess = 0.0;     // largest published-zero entry / matrix max
};

GoldenComparison compare(const ProbabilityMatrix& m, const reference::Matrix10& golden) {
  GoldenComparison c;
  const double top = m.max_value();
  for (std::size_t j = 0; j < golden.size(); ++j) {
    const double dev = std::abs(m.values[j] - golden[j]);
    if (golden[j] == 0.0) {
      c.zero_excess = std::max(c.zero_excess, m.values[j] / top);
    } else if (golden[j] < 1e-5) {
      c.tiny_deviation = std::max(c.tiny_deviation, dev);
      continue;
    }
    c.max_deviation = std::max(c.max_deviation, dev);
  }
  return c;
}

struct SeriesValue {
  double value = 0.0;
  double magnitude = 0.0;  // sum of |terms|
};

// Direct power series in long double, used only as an independent reference.
SeriesValue direct_series(long double a, long double b, long double c, long double x) {
  long double term = 1.0L;
  long double sum = 1.0L;
  long double magnitude = 1.0L;
  for (int n = 0; n < 200000; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x;
    sum += term;
    magnitude += std::abs(term);
    if (std::abs(term) <= 1e-22L * magnitude) break;
  }
  return {static_cast<double>(sum), static_cast<double>(magnitude)};
}

double relative(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

bool Report::passed() const {
  return std::all_of(criteria.begin(), criteria.end(),
                     [](const CriterionResult& c) { return c.passed; });
}

CriterionResult check_vacuum_golden(const Options& o) {
  return guarded(1, "vacuum golden matrix", kGoldenTolerance, [&](CriterionResult& r) {
    const auto start = Clock::now();
    const ProbabilityModel model = vacuum_model(o);
    const auto modes = default_mode_ordering();
    const ProbabilityMatrix m = probability_matrix(modes, model, {}, o.threads);
    const double elapsed = seconds_since(start);
    const GoldenComparison c = compare(m, reference::vacuum_matrix());
    r.max_deviation = c.max_deviation;
    r.imaginary_residual = model.max_imaginary_residual();
    r.passed = c.max_deviation <= kGoldenTolerance && c.zero_excess <= kZeroFraction &&
               elapsed < kGoldenSeconds;
    r.detail = "max |dev| " + format(c.max_deviation) + ", zero entries <= " +
               format(c.zero_excess) + " of max, " + format(elapsed) + " s";
  });
}

CriterionResult check_turbulence_golden(const Options& o) {
  if (o.vacuum_only) return skipped(2, "turbulence golden matrix");
  return guarded(2, "turbulence golden matrix", kGoldenTolerance, [&](CriterionResult& r) {
    const auto start = Clock::now();
    const ProbabilityModel model = turbulent_model(o, o.turbulence_rytov);
    const auto modes = default_mode_ordering();
    const ProbabilityMatrix m = probability_matrix(modes, model, {}, o.threads);
    const double elapsed = seconds_since(start);
    const GoldenComparison c = compare(m, reference::turbulence_matrix());
    r.max_deviation = c.max_deviation;
    r.imaginary_residual = model.max_imaginary_residual();
    r.passed = c.max_deviation <= kGoldenTolerance && c.tiny_deviation <= kTinyEntryTolerance &&
               elapsed < kGoldenSeconds;
    r.detail = "gamma " + format(model.constants().gamma) + ", max |dev| " +
               format(c.max_deviation) + ", 3e-6 entries |dev| " + format(c.tiny_deviation) +
               ", " + format(elapsed) + " s";
  });
}

CriterionResult check_selection_rules(const Options& o) {
  return guarded(3, "selection-rule equivalence", kZeroFraction, [&](CriterionResult& r) {
    const ProbabilityModel model = vacuum_model(o);
    const auto modes = default_mode_ordering();
    const ProbabilityMatrix m = probability_matrix(modes, model, {}, o.threads);
    const double top = m.max_value();
    int mismatches = 0;
    double largest_forbidden = 0.0;
    for (std::size_t s = 0; s < modes.size(); ++s) {
      for (std::size_t i = 0; i < modes.size(); ++i) {
        const double fraction = m.at(s, i) / top;
        const bool negligible = fraction < kZeroFraction;
        const bool allowed = selection_rule_allowed({modes[s], modes[i]});
        if (!allowed) largest_forbidden = std::max(largest_forbidden, fraction);
        if (negligible == allowed) ++mismatches;
      }
    }
    r.max_deviation = largest_forbidden;
    r.imaginary_residual = model.max_imaginary_residual();
    r.passed = mismatches == 0;
    r.detail = std::to_string(mismatches) + " mismatches over " +
               std::to_string(modes.size() * modes.size()) + " pairs";
  });
}

namespace {

struct OracleComparison {
  double max_relative = 0.0;
  double max_convergence = 0.0;
  double forbidden_excess = 0.0;
  double residual = 0.0;
};

OracleComparison oracle_comparison(const Options& o, const ChannelOptions& channel) {
  const auto modes = modes_up_to_order(2);
  const ProbabilityModel model(derive_constants(o.config, TurbulenceSpec::vacuum(), channel));
  const VacuumOverlaps overlaps(o.config,
                                QuadratureSpec::for_geometry(o.config, channel, o.oracle_nodes), 2);
  OracleComparison c;
  for (unsigned mu = 0; mu <= 2; ++mu) {
    for (unsigned nu = 0; nu <= 2; ++nu) {
      c.max_convergence = std::max(c.max_convergence, overlaps.self_convergence(mu, nu));
    }
  }
  const double engine00 = model.joint_probability({});
  const double oracle00 = vacuum_probability_oracle({}, overlaps, 1.0);
  double engine_max = 0.0;
  double oracle_max = 0.0;
  for (const auto& s : modes) {
    for (const auto& i : modes) {
      engine_max = std::max(engine_max, model.joint_probability({s, i}) / engine00);
      oracle_max = std::max(oracle_max, vacuum_probability_oracle({s, i}, overlaps, 1.0) / oracle00);
    }
  }
  for (const auto& s : modes) {
    for (const auto& i : modes) {
      const double e = model.joint_probability({s, i}) / engine00;
      const double q = vacuum_probability_oracle({s, i}, overlaps, 1.0) / oracle00;
      if (selection_rule_allowed({s, i})) {
        c.max_relative = std::max(c.max_relative, relative(e, q));
      } else {
        c.forbidden_excess =
            std::max({c.forbidden_excess, e / engine_max, q / oracle_max});
      }
    }
  }
  c.residual = model.max_imaginary_residual();
  return c;
}

}  // namespace

CriterionResult check_oracle(const Options& o) {
  return guarded(4, "oracle equivalence", kOracleTolerance, [&](CriterionResult& r) {
    const auto start = Clock::now();
    const OracleComparison c = oracle_comparison(o, o.channel);
    const double elapsed = seconds_since(start);
    r.max_deviation = c.max_relative;
    r.imaginary_residual = c.residual;
    r.passed = c.max_relative <= kOracleTolerance && c.max_convergence < kOracleConvergence &&
               c.forbidden_excess <= kZeroFraction && elapsed < kOracleSeconds;
    r.detail = "max relative ratio dev " + format(c.max_relative) + ", self-convergence " +
               format(c.max_convergence) + ", forbidden <= " + format(c.forbidden_excess) +
               " of max, " + format(elapsed) + " s";
  });
}

CriterionResult check_symmetry(const Options& o) {
  return guarded(5, "symmetry and factorization", kSymmetryTolerance, [&](CriterionResult& r) {
    std::vector<ProbabilityModel> models;
    models.push_back(vacuum_model(o));
    if (!o.vacuum_only) models.push_back(turbulent_model(o, o.turbulence_rytov));
    constexpr unsigned top = 3;
    double worst = 0.0;
    std::size_t checks = 0;
    for (const auto& model : models) {
      auto p = [&](unsigned a, unsigned b, unsigned c, unsigned d) {
        return model.joint_probability({{a, b}, {c, d}});
      };
      for (unsigned a = 0; a <= top; ++a)
        for (unsigned b = 0; b <= top; ++b)
          for (unsigned c = 0; c <= top; ++c)
            for (unsigned d = 0; d <= top; ++d) {
              worst = std::max(worst, relative(p(a, b, c, d), p(c, d, a, b)));
              ++checks;
              for (unsigned a2 = 0; a2 <= top; ++a2)
                for (unsigned b2 = 0; b2 <= top; ++b2)
                  for (unsigned c2 = 0; c2 <= top; ++c2)
                    for (unsigned d2 = 0; d2 <= top; ++d2) {
                      const double lhs = p(a, b, c, d) * p(a2, b2, c2, d2);
                      const double rhs = p(a, b2, c, d2) * p(a2, b, c2, d);
                      worst = std::max(worst, relative(lhs, rhs));
                      ++checks;
                    }
            }
      r.imaginary_residual = std::max(r.imaginary_residual, model.max_imaginary_residual());
    }
    r.max_deviation = worst;
    r.passed = worst <= kSymmetryTolerance;
    r.detail = std::to_string(checks) + " identities, max relative dev " + format(worst);
  });
}

CriterionResult check_trends(const Options& o) {
  if (o.vacuum_only) return skipped(6, "turbulence trends");
  return guarded(6, "turbulence trends", 0.0, [&](CriterionResult& r) {
    const ModePair diagonal{};
    const ModePair crosstalk{{0, 0}, {0, 1}};
    std::vector<double> allowed;
    std::vector<double> forbidden;
    for (int j = 0; j <= 10; ++j) {
      const ProbabilityModel model = turbulent_model(o, 0.01 * j);
      const double scale = calibration_scale(model.constants(), {});
      allowed.push_back(scale * model.joint_probability(diagonal));
      forbidden.push_back(scale * model.joint_probability(crosstalk));
      r.imaginary_residual = std::max(r.imaginary_residual, model.max_imaginary_residual());
    }
    bool ok = forbidden.front() == 0.0;
    for (std::size_t j = 1; j < allowed.size(); ++j) {
      ok = ok && allowed[j] < allowed[j - 1] && forbidden[j] > forbidden[j - 1];
    }
    r.passed = ok;
    r.detail = "P(00,00) " + format(allowed.front()) + " -> " + format(allowed.back()) +
               ", P(00,01) " + format(forbidden.front()) + " -> " + format(forbidden.back());
  });
}

CriterionResult check_robust_modes(const Options& o) {
  if (o.vacuum_only) return skipped(7, "robust-mode ordering");
  return guarded(7, "robust-mode ordering", 0.0, [&](CriterionResult& r) {
    const ProbabilityModel vac = vacuum_model(o);
    const ProbabilityModel turb = turbulent_model(o, o.turbulence_rytov);
    auto pair = [](unsigned a, unsigned b, unsigned c, unsigned d) {
      return ModePair{{a, b}, {c, d}};
    };
    const double scale = calibration_scale(vac.constants(), {});
    auto leakage = [&](const ModePair& p) { return scale * turb.joint_probability(p); };
    auto retention = [&](const ModePair& p) {
      return turb.joint_probability(p) / vac.joint_probability(p);
    };
    const double weakest_low = std::min(leakage(pair(0, 0, 0, 1)), leakage(pair(0, 0, 1, 0)));
    const double strongest_high = std::max(leakage(pair(0, 0, 1, 2)), leakage(pair(0, 0, 2, 1)));
    const double robust = std::min(retention(pair(0, 0, 0, 2)), retention(pair(0, 0, 2, 0)));
    const double fundamental = retention(pair(0, 0, 0, 0));
    r.imaginary_residual = std::max(vac.max_imaginary_residual(), turb.max_imaginary_residual());
    r.passed = weakest_low > strongest_high && robust > fundamental;
    r.detail = "leakage {00,01},{00,10} >= " + format(weakest_low) + " vs {00,12},{00,21} <= " +
               format(strongest_high) + "; retention {00,02},{00,20} >= " + format(robust) +
               " vs {00,00} " + format(fundamental);
  });
}

CriterionResult check_special_functions(double residual) {
  return guarded(8, "special functions and realness", 1e-10, [&](CriterionResult& r) {
    using specfun::HalfInteger;
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    std::vector<std::string> failures;
    double worst = 0.0;
    auto expect = [&](const std::string& what, double got, double want, double tol) {
      const double dev = want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
      if (!(dev <= tol)) failures.push_back(what);
    };

    expect("gamma(1/2)", specfun::gamma_half(HalfInteger::halves(1)), sqrt_pi, 1e-15);
    expect("gamma(1)", specfun::gamma_half(HalfInteger::whole(1)), 1.0, 0.0);
    expect("gamma(5/2)", specfun::gamma_half(HalfInteger::halves(5)), 0.75 * sqrt_pi, 1e-15);
    for (int t = 1; t <= 60; ++t) {
      const double ratio =
          specfun::gamma_half(HalfInteger(t + 2)) / specfun::gamma_half(HalfInteger(t));
      expect("gamma recurrence", ratio, 0.5 * t, 1e-13);
    }

    expect("pochhammer(-1/2,2)", specfun::pochhammer(-0.5, 2), -0.25, 0.0);
    expect("pochhammer(3,0)", specfun::pochhammer(3.0, 0), 1.0, 0.0);
    expect("pochhammer(1,4)", specfun::pochhammer(1.0, 4), 24.0, 0.0);

    const std::complex<double> one =
        specfun::hyp2f1_terminating(0, 5, HalfInteger::whole(-2), {0.3, 0.1});
    expect("2F1(0,5;-2)", std::abs(one - 1.0), 0.0, 0.0);
    expect("2F1(1,1;-1/2;1/2)",
           std::abs(specfun::hyp2f1_terminating(1, 1, HalfInteger::halves(-1), 0.5)), 0.0, 1e-15);
    expect("2F1(2,2;-3/2;1/4)",
           specfun::hyp2f1_terminating(2, 2, HalfInteger::halves(-3), 0.25).real(), 0.5, 1e-14);
    for (unsigned k = 0; k <= 8; ++k) {
      for (unsigned l = 0; l <= 8; ++l) {
        const HalfInteger c = HalfInteger::halves(1 - static_cast<int>(k + l));
        const std::complex<double> x{0.37, -0.61};
        try {
          if (specfun::hyp2f1_terminating(k, l, c, x) != specfun::hyp2f1_terminating(l, k, c, x)) {
            failures.push_back("termination symmetry");
          }
        } catch (const PoleError&) {
        }
      }
    }

    expect("2F1 at x=0", specfun::hyp2f1_real(0.3, -1.7, 2.5, 0.0), 1.0, 0.0);
    expect("2F1(1/2,3;3;-1)", specfun::hyp2f1_real(0.5, 3.0, 3.0, -1.0), std::sqrt(0.5), 1e-12);
    expect("2F1(1,1;2;-1/2)", specfun::hyp2f1_real(1.0, 1.0, 2.0, -0.5),
           std::log(1.5) / 0.5, 1e-12);
    const double grid[] = {-0.5, 0.5, 1.0, 1.5};
    for (double a : grid) {
      for (double b : grid) {
        for (double c : grid) {
          for (double x : {-0.9, -0.5, -0.1}) {
            const double got = specfun::hyp2f1_real(a, b, c, x);
            const SeriesValue want = direct_series(a, b, c, x);
            // A value cancelled to zero is compared on the scale of its terms.
            const bool zero = std::abs(want.value) < 1e-12 * want.magnitude;
            const double dev = std::abs(got - want.value) /
                               (zero ? want.magnitude : std::abs(want.value));
            worst = std::max(worst, dev);
            if (!(dev <= 1e-10)) failures.push_back("Pfaff vs series");
          }
        }
      }
    }

    r.imaginary_residual = residual;
    r.max_deviation = std::max(worst, residual);
    r.passed = failures.empty() && residual <= kRealnessTolerance;
    r.detail = "Pfaff vs series max rel dev " + format(worst) + ", max Pi imaginary residual " +
               format(residual);
    if (!failures.empty()) r.detail += ", failed: " + failures.front();
  });
}

std::vector<Diagnostic> diagnostics(const Options& o) {
  std::vector<Diagnostic> out;
  const auto modes = default_mode_ordering();
  const auto& golden = reference::turbulence_matrix();

  try {
    const ProbabilityModel vac = vacuum_model(o);
    double raw = 0.0;
    calibration_scale(vac.constants(), {}, &raw);
    out.push_back({"raw P(00,00) in vacuum", raw, "uncalibrated closed form; published 0.31307"});
  } catch (const Error& e) {
    out.push_back({"raw P(00,00) in vacuum", std::nan(""), e.what()});
  }

  if (!o.vacuum_only) {
    try {
      auto deviation = [&](double gamma) {
        const ProbabilityModel model(derive_constants(o.config, gamma, o.channel));
        const ProbabilityMatrix m = probability_matrix(modes, model);
        double worst = 0.0;
        for (std::size_t j = 0; j < golden.size(); ++j) {
          worst = std::max(worst, std::abs(m.values[j] - golden[j]));
        }
        return worst;
      };
      // Golden-section search on the max deviation.
      double lo = 0.0;
      double hi = 0.05;
      const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
      double x1 = hi - phi * (hi - lo);
      double x2 = lo + phi * (hi - lo);
      double f1 = deviation(x1);
      double f2 = deviation(x2);
      for (int it = 0; it < 60 && hi - lo > 1e-8; ++it) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - phi * (hi - lo);
          f1 = deviation(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + phi * (hi - lo);
          f2 = deviation(x2);
        }
      }
      const double best = 0.5 * (lo + hi);
      out.push_back({"best-fit gamma for the turbulence matrix", best,
                     "max |dev| " + format(deviation(best)) + " vs gamma " +
                         format(turbulence_strength(o.turbulence_rytov)) + " from the Rytov law"});

      const ProbabilityModel turb = turbulent_model(o, o.turbulence_rytov);
      const ProbabilityMatrix raw = probability_matrix(modes, turb, Normalization::raw());
      const double scale = golden[0] / raw.values[0];
      double worst = 0.0;
      for (std::size_t j = 0; j < golden.size(); ++j) {
        worst = std::max(worst, std::abs(scale * raw.values[j] - golden[j]));
      }
      out.push_back({"turbulence matrix max |dev|, anchored at its own P(00,00)", worst,
                     "calibration fixed by P(00,00) = 0.2262 instead of the vacuum"});
    } catch (const Error& e) {
      out.push_back({"turbulence fit", std::nan(""), e.what()});
    }
  }

  try {
    ChannelOptions exact = o.channel;
    exact.cross_term = CrossTerm::gaussian_exact;
    const OracleComparison c = oracle_comparison(o, exact);
    out.push_back({"oracle vs engine with the exact Gaussian cross term", c.max_relative,
                   "max relative ratio dev over orders <= 2"});
  } catch (const Error& e) {
    out.push_back({"oracle vs exact cross term", std::nan(""), e.what()});
  }
  return out;
}

Report run(const Options& o) {
  Report report;
  report.criteria.push_back(check_vacuum_golden(o));
  report.criteria.push_back(check_turbulence_golden(o));
  report.criteria.push_back(check_selection_rules(o));
  report.criteria.push_back(check_oracle(o));
  report.criteria.push_back(check_symmetry(o));
  report.criteria.push_back(check_trends(o));
  report.criteria.push_back(check_robust_modes(o));
  double residual = 0.0;
  for (const auto& c : report.criteria) residual = std::max(residual, c.imaginary_residual);
  report.criteria.push_back(check_special_functions(residual));
  if (o.diagnostics) report.diagnostics = diagnostics(o);
  return report;
}

void write_report_text(std::ostream& out, const Report& report) {
  for (const auto& c : report.criteria) {
    const char* tag = c.skipped ? "[SKIP]" : c.passed ? "[PASS]" : "[FAIL]";
    out << tag << " criterion " << c.id << ": " << c.name << " (" << c.detail << ")\n";
  }
  for (const auto& d : report.diagnostics) {
    out << "[INFO] " << d.name << ": " << format(d.value) << " (" << d.detail << ")\n";
  }
}

void write_report_json(std::ostream& out, const Report& report) {
  nlohmann::ordered_json j;
  j["passed"] = report.passed();
  auto& criteria = j["criteria"] = nlohmann::ordered_json::array();
  for (const auto& c : report.criteria) {
    criteria.push_back({{"id", c.id},
                        {"name", c.name},
                        {"passed", c.passed},
                        {"skipped", c.skipped},
                        {"max_deviation", c.max_deviation},
                        {"tolerance", c.tolerance},
                        {"seconds", c.seconds},
                        {"imaginary_residual", c.imaginary_residual},
                        {"detail", c.detail}});
  }
  auto& diags = j["diagnostics"] = nlohmann::ordered_json::array();
  for (const auto& d : report.diagnostics) {
    diags.push_back({{"name", d.name},
                     {"value", std::isfinite(d.value) ? nlohmann::ordered_json(d.value)
                                                      : nlohmann::ordered_json(nullptr)},
                     {"detail", d.detail}});
  }
  out << j.dump(2) << '\n';
}

}  // namespace hgturb::validation
