#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hgturb/channel.hpp"
#include "hgturb/engine.hpp"

namespace hgturb::validation {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool skipped = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  /// Largest realness residual among the Pi factors this check evaluated.
  double imaginary_residual = 0.0;
  std::string detail;
};

/// Reported alongside the criteria but never gated.
struct Diagnostic {
  std::string name;
  double value = 0.0;
  std::string detail;
};

struct Options {
  OpticalConfig config{};
  ChannelOptions channel{};
  double turbulence_rytov = 0.02;
  /// Multiplies gamma of the turbulent fixtures; 1 reproduces the nominal run.
  double gamma_scale = 1.0;
  /// Skips the fixtures that need a turbulent channel.
  bool vacuum_only = false;
  unsigned oracle_nodes = 512;
  unsigned threads = 1;
  bool diagnostics = true;
};

struct Report {
  std::vector<CriterionResult> criteria;
  std::vector<Diagnostic> diagnostics;

  bool passed() const;
};

CriterionResult check_vacuum_golden(const Options& options);
CriterionResult check_turbulence_golden(const Options& options);
CriterionResult check_selection_rules(const Options& options);
CriterionResult check_oracle(const Options& options);
CriterionResult check_symmetry(const Options& options);
CriterionResult check_trends(const Options& options);
CriterionResult check_robust_modes(const Options& options);
/// Special functions plus the realness residual of every Pi the other
/// checks evaluated (`residual` is their maximum).
CriterionResult check_special_functions(double residual);

std::vector<Diagnostic> diagnostics(const Options& options);

Report run(const Options& options);

/// One "[PASS]" / "[FAIL]" / "[SKIP]" line per criterion.
void write_report_text(std::ostream& out, const Report& report);
void write_report_json(std::ostream& out, const Report& report);

}  // namespace hgturb::validation
