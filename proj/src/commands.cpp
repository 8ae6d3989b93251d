#include "hgturb/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "hgturb/errors.hpp"

namespace hgturb {

namespace {

// Orders above kDefaultMaxOrder are rejected by the model with DomainError.
ProbabilityModel make_model(const RunConfig& config, const TurbulenceSpec& turbulence) {
  return ProbabilityModel(derive_constants(config.optics, turbulence, config.channel));
}

Normalization normalization(const RunConfig& config) {
  Normalization n;
  n.mode = config.normalization;
  return n;
}

bool is_pair(const ModePair& p, unsigned a, unsigned b, unsigned c, unsigned d) {
  return p == ModePair{{a, b}, {c, d}} || p == ModePair{{c, d}, {a, b}};
}

std::string rank_note(const ModePair& p, bool allowed) {
  if (allowed && (is_pair(p, 0, 0, 0, 2) || is_pair(p, 0, 0, 2, 0))) return "robust example";
  if (!allowed && (is_pair(p, 0, 0, 0, 1) || is_pair(p, 0, 0, 1, 0))) {
    return "preferred crosstalk example";
  }
  if (!allowed && (is_pair(p, 0, 0, 1, 2) || is_pair(p, 0, 0, 2, 1))) {
    return "suppressed crosstalk example";
  }
  return "";
}

}  // namespace

TurbulenceSpec RunConfig::turbulence() const {
  if (cn2 && rytov) throw DomainError("give at most one of cn2 and rytov");
  if (cn2) return TurbulenceSpec::from_cn2(*cn2);
  if (rytov) return TurbulenceSpec::from_rytov(*rytov);
  return TurbulenceSpec::vacuum();
}

std::vector<ModeIndex> RunConfig::mode_list() const {
  std::vector<ModeIndex> out;
  if (!modes.empty()) {
    out = modes;
  } else if (max_sum) {
    out = modes_up_to_order(*max_sum);
  } else {
    out = default_mode_ordering();
  }
  if (out.empty()) throw DomainError("mode list is empty");
  return out;
}

io::CsvStyle RunConfig::csv_style() const {
  return precision ? io::CsvStyle::significant_digits(*precision) : io::CsvStyle{};
}

void RunConfig::validate() const {
  optics.validate();
  turbulence();
  mode_list();
  if (precision && (*precision < 1 || *precision > 17)) {
    throw DomainError("precision must be between 1 and 17");
  }
  if (threads == 0) throw DomainError("threads must be at least 1");
}

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  return std::nullopt;
}

std::optional<Normalization::Mode> parse_normalization(std::string_view text) {
  if (text == "raw") return Normalization::Mode::raw;
  if (text == "calibrated") return Normalization::Mode::calibrated;
  return std::nullopt;
}

ProbabilityMatrix compute_matrix(const RunConfig& config) {
  config.validate();
  const auto modes = config.mode_list();
  const ProbabilityModel model = make_model(config, config.turbulence());
  return probability_matrix(modes, model, normalization(config), config.threads);
}

void cmd_matrix(const RunConfig& config, std::ostream& out) {
  const ProbabilityMatrix m = compute_matrix(config);
  if (config.format == OutputFormat::json) {
    io::write_matrix_json(out, m);
  } else {
    io::write_matrix_csv(out, m, config.csv_style());
  }
}

std::vector<double> default_sweep_grid() {
  std::vector<double> grid;
  for (int j = 0; j <= 10; ++j) grid.push_back(j / 100.0);
  return grid;
}

std::vector<ModePair> default_sweep_pairs() { return {ModePair{}, ModePair{{0, 0}, {0, 1}}}; }

io::SweepResult run_sweep(const RunConfig& config, const std::vector<double>& grid,
                          const std::vector<ModePair>& pairs) {
  config.validate();
  if (grid.empty()) throw DomainError("sweep grid is empty");
  if (pairs.empty()) throw DomainError("sweep needs at least one mode pair");
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!(grid[j] >= 0.0) || !std::isfinite(grid[j])) {
      throw DomainError("sweep grid values must be nonnegative");
    }
    if (j > 0 && !(grid[j] > grid[j - 1])) throw DomainError("sweep grid must be ascending");
  }

  io::SweepResult sweep;
  sweep.grid = grid;
  sweep.pairs = pairs;
  sweep.normalization = normalization(config);
  sweep.params = derive_constants(config.optics, TurbulenceSpec::vacuum(), config.channel);
  sweep.scale = calibration_scale(sweep.params, sweep.normalization);
  sweep.series.assign(pairs.size(), std::vector<double>(grid.size()));
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const ProbabilityModel model = make_model(config, TurbulenceSpec::from_rytov(grid[g]));
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      sweep.series[p][g] = sweep.scale * model.joint_probability(pairs[p]);
    }
  }
  return sweep;
}

void cmd_sweep(const RunConfig& config, const std::vector<double>& grid,
               const std::vector<ModePair>& pairs, std::ostream& out) {
  const io::SweepResult sweep = run_sweep(config, grid, pairs);
  if (config.format == OutputFormat::json) {
    io::write_sweep_json(out, sweep);
  } else {
    io::write_sweep_csv(out, sweep, config.csv_style());
  }
}

io::RankResult run_rank(const RunConfig& config) {
  config.validate();
  const auto modes = config.mode_list();
  const ProbabilityModel turbulent = make_model(config, config.turbulence());
  const ProbabilityModel vacuum = make_model(config, TurbulenceSpec::vacuum());

  io::RankResult rank;
  rank.params = turbulent.constants();
  rank.normalization = normalization(config);
  rank.scale = calibration_scale(rank.params, rank.normalization);
  const double scale = rank.scale;
  for (const auto& s : modes) {
    for (const auto& i : modes) {
      const ModePair pair{s, i};
      const bool allowed = selection_rule_allowed(pair);
      io::RankEntry e;
      e.pair = pair;
      e.vacuum = scale * vacuum.joint_probability(pair);
      e.turbulent = scale * turbulent.joint_probability(pair);
      e.note = rank_note(pair, allowed);
      if (allowed && e.vacuum > 0.0) {
        e.score = e.turbulent / e.vacuum;
        rank.retention.push_back(std::move(e));
      } else if (!allowed) {
        e.score = e.turbulent;
        rank.leakage.push_back(std::move(e));
      }
    }
  }
  auto by_score = [](const io::RankEntry& a, const io::RankEntry& b) { return a.score > b.score; };
  std::stable_sort(rank.retention.begin(), rank.retention.end(), by_score);
  std::stable_sort(rank.leakage.begin(), rank.leakage.end(), by_score);
  return rank;
}

void cmd_rank(const RunConfig& config, std::ostream& out) {
  const io::RankResult rank = run_rank(config);
  if (config.format == OutputFormat::json) {
    io::write_rank_json(out, rank);
  } else {
    io::write_rank_csv(out, rank, config.csv_style());
  }
}

bool cmd_validate(const validation::Options& options, OutputFormat format, std::ostream& out) {
  const validation::Report report = validation::run(options);
  if (format == OutputFormat::json) {
    validation::write_report_json(out, report);
  } else {
    validation::write_report_text(out, report);
  }
  return report.passed();
}

}  // namespace hgturb
