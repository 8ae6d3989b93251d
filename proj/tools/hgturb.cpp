// hgturb: joint HG-mode detection probabilities of SPDC photon pairs after a
// turbulent link.
//
//   hgturb matrix   [--rytov S | --cn2 C] [--modes 00,01,... | --max-sum N]
//   hgturb sweep    [--grid 0,0.01,...] [--pairs 00:00,00:01]
//   hgturb rank     [--rytov S | --cn2 C]
//   hgturb validate [--vacuum-only] [--gamma-scale F]
//
// Exit codes: 0 ok, 1 validation failed, 2 invalid parameters, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hgturb/commands.hpp"
#include "hgturb/errors.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailed = 1;
constexpr int kInvalidParameters = 2;
constexpr int kNumericalFailure = 3;

struct Flags {
  double wavelength = hgturb::OpticalConfig{}.wavelength;
  double distance = hgturb::OpticalConfig{}.distance;
  double pump_waist = hgturb::OpticalConfig{}.pump_waist;
  std::optional<double> cn2;
  std::optional<double> rytov;
  std::vector<std::string> modes;
  std::optional<unsigned> max_sum;
  std::string normalize = "calibrated";
  std::string format = "csv";
  std::string output;
  std::string w_variant = "propagated";
  std::string cross_term = "as_printed";
  std::optional<int> precision;
  unsigned threads = 1;

  std::vector<double> grid;
  std::vector<std::string> pairs;

  bool vacuum_only = false;
  double gamma_scale = 1.0;
  unsigned oracle_nodes = 512;
  bool no_diagnostics = false;
};

hgturb::RunConfig to_run_config(const Flags& f) {
  hgturb::RunConfig c;
  c.optics = {f.wavelength, f.distance, f.pump_waist};
  c.cn2 = f.cn2;
  c.rytov = f.rytov;
  for (const auto& token : f.modes) {
    const auto mode = hgturb::parse_mode(token);
    if (!mode) throw hgturb::DomainError("bad mode label '" + token + "'");
    c.modes.push_back(*mode);
  }
  c.max_sum = f.max_sum;
  c.normalization = *hgturb::parse_normalization(f.normalize);
  c.format = *hgturb::parse_output_format(f.format);
  c.output = f.output;
  c.channel.beam_radius = *hgturb::parse_beam_radius(f.w_variant);
  c.channel.cross_term = *hgturb::parse_cross_term(f.cross_term);
  c.precision = f.precision;
  c.threads = f.threads;
  return c;
}

std::vector<hgturb::ModePair> parse_pairs(const std::vector<std::string>& tokens) {
  std::vector<hgturb::ModePair> out;
  for (const auto& token : tokens) {
    const auto pair = hgturb::parse_pair(token);
    if (!pair) throw hgturb::DomainError("bad mode pair '" + token + "' (expected ss:ii)");
    out.push_back(*pair);
  }
  return out;
}

// Writes to --output if given, else stdout.
template <typename Body>
bool emit(const std::string& path, Body&& body) {
  if (path.empty()) {
    return body(std::cout);
  }
  std::ofstream file(path);
  if (!file) throw hgturb::DomainError("cannot open output file '" + path + "'");
  return body(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint HG-mode detection probabilities of SPDC photon pairs in turbulence"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file; command-line flags take precedence");

  Flags f;
  app.add_option("--wavelength", f.wavelength, "wavelength [m]")->capture_default_str();
  app.add_option("--distance", f.distance, "propagation distance [m]")->capture_default_str();
  app.add_option("--pump-waist", f.pump_waist, "pump spot size at the crystal [m]")
      ->capture_default_str();
  auto* cn2 = app.add_option("--cn2", f.cn2, "refractive-index structure constant [m^-2/3]");
  auto* rytov = app.add_option("--rytov", f.rytov, "Rytov variance");
  cn2->excludes(rytov);
  auto* modes = app.add_option("--modes", f.modes, "mode labels, e.g. 00,01,10")->delimiter(',');
  auto* max_sum = app.add_option("--max-sum", f.max_sum, "all modes with m + n <= S");
  modes->excludes(max_sum);
  app.add_option("--normalize", f.normalize, "raw or calibrated")
      ->check(CLI::IsMember({"raw", "calibrated"}))
      ->capture_default_str();
  app.add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--output", f.output, "output file (default stdout)");
  app.add_option("--w-variant", f.w_variant, "beam radius in the mode kernel")
      ->check(CLI::IsMember({"propagated", "waist"}))
      ->capture_default_str();
  app.add_option("--cross-term", f.cross_term, "Gaussian cross-term convention")
      ->check(CLI::IsMember({"as_printed", "gaussian_exact"}))
      ->capture_default_str();
  app.add_option("--precision", f.precision, "significant digits in CSV (default 5 decimals)")
      ->check(CLI::Range(1, 17));
  app.add_option("--threads", f.threads, "worker threads for matrix fills")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* matrix = app.add_subcommand("matrix", "probability matrix over a mode list");
  auto* sweep = app.add_subcommand("sweep", "probabilities of mode pairs versus Rytov variance");
  sweep->add_option("--grid", f.grid, "ascending Rytov variances (default 0,0.01,...,0.1)")
      ->delimiter(',');
  sweep->add_option("--pairs", f.pairs, "mode pairs ss:ii (default 00:00,00:01)")->delimiter(',');
  auto* rank = app.add_subcommand("rank", "retention of allowed pairs and leakage into forbidden ones");
  auto* validate = app.add_subcommand("validate", "run the acceptance checks");
  validate->add_flag("--vacuum-only", f.vacuum_only, "skip the turbulent fixtures");
  validate->add_option("--gamma-scale", f.gamma_scale, "multiply gamma of the turbulent fixtures")
      ->check(CLI::NonNegativeNumber);
  validate->add_option("--oracle-nodes", f.oracle_nodes, "quadrature nodes per dimension")
      ->capture_default_str();
  validate->add_flag("--no-diagnostics", f.no_diagnostics, "skip the ungated diagnostics");
  for (auto* sub : {matrix, sweep, rank, validate}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidParameters;
  }

  try {
    const hgturb::RunConfig config = to_run_config(f);
    if (matrix->parsed()) {
      emit(config.output, [&](std::ostream& out) {
        hgturb::cmd_matrix(config, out);
        return true;
      });
    } else if (sweep->parsed()) {
      const auto grid = f.grid.empty() ? hgturb::default_sweep_grid() : f.grid;
      const auto pairs = f.pairs.empty() ? hgturb::default_sweep_pairs() : parse_pairs(f.pairs);
      emit(config.output, [&](std::ostream& out) {
        hgturb::cmd_sweep(config, grid, pairs, out);
        return true;
      });
    } else if (rank->parsed()) {
      emit(config.output, [&](std::ostream& out) {
        hgturb::cmd_rank(config, out);
        return true;
      });
    } else if (validate->parsed()) {
      config.validate();
      hgturb::validation::Options options;
      options.config = config.optics;
      options.channel = config.channel;
      if (config.rytov) options.turbulence_rytov = *config.rytov;
      if (config.cn2) options.turbulence_rytov = config.turbulence().rytov(config.optics);
      options.gamma_scale = f.gamma_scale;
      options.vacuum_only = f.vacuum_only;
      options.oracle_nodes = f.oracle_nodes;
      options.threads = config.threads;
      options.diagnostics = !f.no_diagnostics;
      const bool passed = emit(config.output, [&](std::ostream& out) {
        return hgturb::cmd_validate(options, config.format, out);
      });
      return passed ? kOk : kValidationFailed;
    }
  } catch (const hgturb::DomainError& e) {
    std::cerr << "hgturb: invalid parameters: " << e.what() << '\n';
    return kInvalidParameters;
  } catch (const hgturb::NumericalError& e) {
    std::cerr << "hgturb: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "hgturb: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kOk;
}
