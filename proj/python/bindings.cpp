#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

#include "hgturb/commands.hpp"
#include "hgturb/errors.hpp"
#include "hgturb/oracle.hpp"
#include "hgturb/specfun.hpp"
#include "hgturb/validation.hpp"

namespace py = pybind11;
using namespace hgturb;

namespace {

specfun::HalfInteger to_half_integer(double x) {
  const double twice = 2.0 * x;
  if (twice != std::round(twice)) {
    throw DomainError("expected an integer or half-integer, got " + std::to_string(x));
  }
  return specfun::HalfInteger(static_cast<int>(twice));
}

ModeIndex to_mode(const std::string& text) {
  const auto mode = parse_mode(text);
  if (!mode) throw DomainError("bad mode label '" + text + "'");
  return *mode;
}

ModePair to_pair(const std::string& text) {
  const auto pair = parse_pair(text);
  if (!pair) throw DomainError("bad mode pair '" + text + "' (expected ss:ii)");
  return *pair;
}

ChannelOptions to_channel(const std::string& w_variant, const std::string& cross_term) {
  ChannelOptions c;
  const auto w = parse_beam_radius(w_variant);
  const auto x = parse_cross_term(cross_term);
  if (!w) throw DomainError("w_variant must be 'propagated' or 'waist'");
  if (!x) throw DomainError("cross_term must be 'as_printed' or 'gaussian_exact'");
  c.beam_radius = *w;
  c.cross_term = *x;
  return c;
}

RunConfig to_run_config(const OpticalConfig& optics, std::optional<double> rytov,
                        std::optional<double> cn2, const std::optional<std::vector<std::string>>& modes,
                        std::optional<unsigned> max_sum, const std::string& normalize,
                        const std::string& w_variant, const std::string& cross_term,
                        unsigned threads) {
  RunConfig c;
  c.optics = optics;
  c.rytov = rytov;
  c.cn2 = cn2;
  if (modes) {
    if (modes->empty()) throw DomainError("mode list is empty");
    for (const auto& m : *modes) c.modes.push_back(to_mode(m));
  }
  c.max_sum = max_sum;
  const auto n = parse_normalization(normalize);
  if (!n) throw DomainError("normalize must be 'raw' or 'calibrated'");
  c.normalization = *n;
  c.channel = to_channel(w_variant, cross_term);
  c.threads = threads;
  return c;
}

std::vector<std::string> labels(const std::vector<ModeIndex>& modes) {
  std::vector<std::string> out;
  for (const auto& m : modes) out.push_back(label(m));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Closed-form HG-mode joint detection probabilities for SPDC pairs in turbulence";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  (void)numerical;

  // special functions
  m.def("gamma_half", [](double x) { return specfun::gamma_half(to_half_integer(x)); },
        py::arg("x"), "Gamma at a positive integer or half-integer.");
  m.def("pochhammer", &specfun::pochhammer, py::arg("c"), py::arg("n"));
  m.def(
      "hyp2f1_terminating",
      [](unsigned k, unsigned l, double c, std::complex<double> x) {
        return specfun::hyp2f1_terminating(k, l, to_half_integer(c), x);
      },
      py::arg("k"), py::arg("l"), py::arg("c"), py::arg("x"),
      "2F1(-k, -l; c; x) for integer or half-integer c.");
  m.def("hyp2f1_real", &specfun::hyp2f1_real, py::arg("a"), py::arg("b"), py::arg("c"),
        py::arg("x"), "Real Gauss hypergeometric function for x < 1.");

  // channel
  py::class_<OpticalConfig>(m, "OpticalConfig")
      .def(py::init([](double wavelength, double distance, double pump_waist) {
             OpticalConfig c{wavelength, distance, pump_waist};
             c.validate();
             return c;
           }),
           py::arg("wavelength") = OpticalConfig{}.wavelength,
           py::arg("distance") = OpticalConfig{}.distance,
           py::arg("pump_waist") = OpticalConfig{}.pump_waist)
      .def_readonly("wavelength", &OpticalConfig::wavelength)
      .def_readonly("distance", &OpticalConfig::distance)
      .def_readonly("pump_waist", &OpticalConfig::pump_waist)
      .def_property_readonly("wavenumber", &OpticalConfig::wavenumber)
      .def("__repr__", [](const OpticalConfig& c) {
        std::ostringstream s;
        s << "OpticalConfig(wavelength=" << c.wavelength << ", distance=" << c.distance
          << ", pump_waist=" << c.pump_waist << ")";
        return s.str();
      });

  py::class_<DerivedConstants>(m, "DerivedConstants")
      .def_readonly("config", &DerivedConstants::config)
      .def_readonly("rytov", &DerivedConstants::rytov)
      .def_readonly("cn2", &DerivedConstants::cn2)
      .def_readonly("k", &DerivedConstants::k)
      .def_readonly("fresnel", &DerivedConstants::fresnel)
      .def_readonly("w0", &DerivedConstants::w0)
      .def_readonly("w", &DerivedConstants::w)
      .def_readonly("zeta", &DerivedConstants::zeta)
      .def_readonly("gamma", &DerivedConstants::gamma)
      .def_readonly("a2", &DerivedConstants::a2)
      .def_readonly("a3", &DerivedConstants::a3)
      .def_readonly("b1", &DerivedConstants::b1)
      .def_readonly("b2", &DerivedConstants::b2)
      .def_readonly("b3", &DerivedConstants::b3)
      .def_readonly("b4", &DerivedConstants::b4)
      .def_readonly("c1", &DerivedConstants::c1)
      .def_readonly("c2", &DerivedConstants::c2)
      .def_readonly("c3", &DerivedConstants::c3)
      .def_readonly("c4", &DerivedConstants::c4)
      .def_property_readonly("w_variant",
                             [](const DerivedConstants& d) {
                               return std::string(to_string(d.options.beam_radius));
                             })
      .def_property_readonly("cross_term", [](const DerivedConstants& d) {
        return std::string(to_string(d.options.cross_term));
      });

  m.def("rytov_variance", &rytov_variance, py::arg("cn2"), py::arg("wavelength"),
        py::arg("distance"));
  m.def("cn2_from_rytov", &cn2_from_rytov, py::arg("rytov"), py::arg("wavelength"),
        py::arg("distance"));
  m.def("turbulence_strength", &turbulence_strength, py::arg("rytov"));
  m.def(
      "derive_constants",
      [](const OpticalConfig& cfg, std::optional<double> rytov, std::optional<double> cn2,
         std::optional<double> gamma, const std::string& w_variant, const std::string& cross_term) {
        const ChannelOptions options = to_channel(w_variant, cross_term);
        if (static_cast<int>(rytov.has_value()) + cn2.has_value() + gamma.has_value() > 1) {
          throw DomainError("give at most one of rytov, cn2 and gamma");
        }
        if (gamma) return derive_constants(cfg, *gamma, options);
        if (cn2) return derive_constants(cfg, TurbulenceSpec::from_cn2(*cn2), options);
        return derive_constants(cfg, TurbulenceSpec::from_rytov(rytov.value_or(0.0)), options);
      },
      py::arg("config") = OpticalConfig{}, py::kw_only(), py::arg("rytov") = py::none(),
      py::arg("cn2") = py::none(), py::arg("gamma") = py::none(),
      py::arg("w_variant") = "propagated", py::arg("cross_term") = "as_printed");

  // engine
  m.def("modes_up_to_order", [](unsigned s) { return labels(modes_up_to_order(s)); },
        py::arg("max_sum"));
  m.def("default_mode_ordering", [] { return labels(default_mode_ordering()); });
  m.def("selection_rule_allowed",
        [](const std::string& pair) { return selection_rule_allowed(to_pair(pair)); },
        py::arg("pair"), "Pair as 'ss:ii', pump in the fundamental mode.");
  m.def("pi_factor", &pi_factor, py::arg("mu"), py::arg("nu"), py::arg("constants"));
  m.def(
      "joint_probability",
      [](const std::string& pair, const DerivedConstants& consts) {
        return ProbabilityModel(consts).joint_probability(to_pair(pair));
      },
      py::arg("pair"), py::arg("constants"), "Uncalibrated P for a pair 'ss:ii'.");

  m.def(
      "probability_matrix",
      [](const OpticalConfig& cfg, std::optional<double> rytov, std::optional<double> cn2,
         std::optional<std::vector<std::string>> modes, std::optional<unsigned> max_sum,
         const std::string& normalize, const std::string& w_variant,
         const std::string& cross_term, unsigned threads) {
        const RunConfig rc = to_run_config(cfg, rytov, cn2, modes, max_sum, normalize, w_variant,
                                           cross_term, threads);
        ProbabilityMatrix pm;
        {
          py::gil_scoped_release release;
          pm = compute_matrix(rc);
        }
        const auto n = static_cast<py::ssize_t>(pm.size());
        py::array_t<double> values({n, n});
        std::copy(pm.values.begin(), pm.values.end(), values.mutable_data());
        py::dict out;
        out["ordering"] = labels(pm.ordering);
        out["matrix"] = values;
        out["normalization"] = std::string(to_string(pm.normalization.mode));
        out["scale"] = pm.scale;
        out["raw_reference"] = pm.raw_reference;
        out["params"] = pm.params;
        return out;
      },
      py::arg("config") = OpticalConfig{}, py::kw_only(), py::arg("rytov") = py::none(),
      py::arg("cn2") = py::none(), py::arg("modes") = py::none(),
      py::arg("max_sum") = py::none(), py::arg("normalize") = "calibrated",
      py::arg("w_variant") = "propagated", py::arg("cross_term") = "as_printed",
      py::arg("threads") = 1u,
      "Joint probabilities over every ordered (signal, idler) pair. Rows are signal modes.");

  m.def(
      "sweep",
      [](const OpticalConfig& cfg, std::optional<std::vector<double>> grid,
         std::optional<std::vector<std::string>> pairs, const std::string& normalize,
         const std::string& w_variant, const std::string& cross_term) {
        const RunConfig rc = to_run_config(cfg, std::nullopt, std::nullopt, std::nullopt,
                                           std::nullopt, normalize, w_variant, cross_term, 1);
        std::vector<ModePair> parsed;
        if (pairs) {
          for (const auto& p : *pairs) parsed.push_back(to_pair(p));
        } else {
          parsed = default_sweep_pairs();
        }
        const io::SweepResult s = run_sweep(rc, grid.value_or(default_sweep_grid()), parsed);
        py::dict series;
        for (std::size_t p = 0; p < s.pairs.size(); ++p) series[py::str(label(s.pairs[p]))] = s.series[p];
        py::dict out;
        out["grid"] = s.grid;
        out["series"] = series;
        out["scale"] = s.scale;
        return out;
      },
      py::arg("config") = OpticalConfig{}, py::kw_only(), py::arg("grid") = py::none(),
      py::arg("pairs") = py::none(), py::arg("normalize") = "calibrated",
      py::arg("w_variant") = "propagated", py::arg("cross_term") = "as_printed");

  // oracle
  m.def(
      "vacuum_probability_oracle",
      [](const std::string& pair, const OpticalConfig& cfg, unsigned nodes,
         const std::string& w_variant, double reference_value) {
        const QuadratureSpec spec =
            QuadratureSpec::for_geometry(cfg, to_channel(w_variant, "as_printed"), nodes);
        py::gil_scoped_release release;
        return vacuum_probability_oracle(to_pair(pair), cfg, spec, reference_value);
      },
      py::arg("pair"), py::arg("config") = OpticalConfig{}, py::kw_only(),
      py::arg("nodes") = 512u, py::arg("w_variant") = "propagated",
      py::arg("reference_value") = kVacuumReferenceValue,
      "Brute-force quadrature of the vacuum joint probability, scaled so (00,00) equals "
      "reference_value.");

  // validation
  m.def(
      "validate",
      [](const OpticalConfig& cfg, bool vacuum_only, double gamma_scale, unsigned oracle_nodes,
         bool diagnostics) {
        validation::Options o;
        o.config = cfg;
        o.vacuum_only = vacuum_only;
        o.gamma_scale = gamma_scale;
        o.oracle_nodes = oracle_nodes;
        o.diagnostics = diagnostics;
        validation::Report report;
        {
          py::gil_scoped_release release;
          report = validation::run(o);
        }
        py::list criteria;
        for (const auto& c : report.criteria) {
          py::dict d;
          d["id"] = c.id;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["skipped"] = c.skipped;
          d["max_deviation"] = c.max_deviation;
          d["tolerance"] = c.tolerance;
          d["seconds"] = c.seconds;
          d["detail"] = c.detail;
          criteria.append(d);
        }
        py::dict diags;
        for (const auto& d : report.diagnostics) diags[py::str(d.name)] = d.value;
        py::dict out;
        out["passed"] = report.passed();
        out["criteria"] = criteria;
        out["diagnostics"] = diags;
        return out;
      },
      py::arg("config") = OpticalConfig{}, py::kw_only(), py::arg("vacuum_only") = false,
      py::arg("gamma_scale") = 1.0, py::arg("oracle_nodes") = 512u,
      py::arg("diagnostics") = true);
}
