#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hgturb/channel.hpp"
#include "hgturb/engine.hpp"
#include "hgturb/io.hpp"
#include "hgturb/validation.hpp"

namespace hgturb {

enum class OutputFormat { csv, json };

/// Everything one CLI invocation needs. Leaving both cn2 and rytov unset
/// means vacuum.
struct RunConfig {
  OpticalConfig optics{};
  std::optional<double> cn2;
  std::optional<double> rytov;
  /// Explicit mode list; takes precedence over max_sum.
  std::vector<ModeIndex> modes;
  std::optional<unsigned> max_sum;
  Normalization::Mode normalization = Normalization::Mode::calibrated;
  OutputFormat format = OutputFormat::csv;
  std::string output;  // empty = stdout
  ChannelOptions channel{};
  /// Significant digits for CSV values; unset = 5 fixed decimals.
  std::optional<int> precision;
  unsigned threads = 1;

  /// Throws DomainError if both cn2 and rytov are set.
  TurbulenceSpec turbulence() const;
  /// Explicit list, else max_sum expansion, else the ten-mode default.
  /// Throws DomainError if the result is empty.
  std::vector<ModeIndex> mode_list() const;
  io::CsvStyle csv_style() const;
  void validate() const;
};

std::optional<OutputFormat> parse_output_format(std::string_view text);
std::optional<Normalization::Mode> parse_normalization(std::string_view text);

ProbabilityMatrix compute_matrix(const RunConfig& config);
void cmd_matrix(const RunConfig& config, std::ostream& out);

/// Default grid {0, 0.01, ..., 0.1}; default pairs (00,00) and (00,01).
std::vector<double> default_sweep_grid();
std::vector<ModePair> default_sweep_pairs();

/// Throws DomainError unless the grid is nonempty, nonnegative and ascending.
io::SweepResult run_sweep(const RunConfig& config, const std::vector<double>& grid,
                          const std::vector<ModePair>& pairs);
void cmd_sweep(const RunConfig& config, const std::vector<double>& grid,
               const std::vector<ModePair>& pairs, std::ostream& out);

/// Every ordered pair of config.mode_list(), split by the selection rule.
/// The vacuum reference shares the geometry and channel options.
io::RankResult run_rank(const RunConfig& config);
void cmd_rank(const RunConfig& config, std::ostream& out);

/// Returns true when every criterion passed.
bool cmd_validate(const validation::Options& options, OutputFormat format, std::ostream& out);

}  // namespace hgturb
