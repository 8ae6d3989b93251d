#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hgturb/engine.hpp"

namespace hgturb::io {

/// CSV number style: fixed decimals (default 5) or significant digits.
struct CsvStyle {
  enum class Kind { fixed, significant };
  Kind kind = Kind::fixed;
  int digits = 5;

  static CsvStyle fixed_decimals(int d) { return {Kind::fixed, d}; }
  static CsvStyle significant_digits(int d) { return {Kind::significant, d}; }
};

std::string format_number(double value, const CsvStyle& style);

/// Metadata describing how a matrix was produced, as ordered key/value pairs.
std::vector<std::pair<std::string, std::string>> matrix_metadata(const ProbabilityMatrix& m);

/// '#' header lines with the parameters, a label row, then one row per
/// signal mode; cell (i, j) = P(signal = row, idler = column).
void write_matrix_csv(std::ostream& out, const ProbabilityMatrix& m, const CsvStyle& style = {});

/// {"params": {...}, "ordering": [...], "matrix": [[...]], "normalization": {...}}
/// Values are written with round-trip precision.
void write_matrix_json(std::ostream& out, const ProbabilityMatrix& m);

/// The parts of a serialized matrix needed to compare runs.
struct MatrixDocument {
  std::vector<std::string> ordering;
  std::vector<double> values;  // row-major
  std::string normalization_mode;
  std::string reference_pair;
  double reference_value = 0.0;
};

/// Throws DomainError on malformed input.
MatrixDocument read_matrix_json(std::istream& in);
MatrixDocument read_matrix_csv(std::istream& in);

struct SweepResult {
  std::vector<double> grid;  // sigma_R^2
  std::vector<ModePair> pairs;
  /// series[p][g] = P(pairs[p]) at grid[g]
  std::vector<std::vector<double>> series;
  DerivedConstants params;  // vacuum snapshot of the geometry
  Normalization normalization;
  double scale = 1.0;
};

/// Column 1 = rytov, then one column per pair labelled "P(ss,ii)".
void write_sweep_csv(std::ostream& out, const SweepResult& sweep, const CsvStyle& style = {});
void write_sweep_json(std::ostream& out, const SweepResult& sweep);

struct RankEntry {
  ModePair pair;
  double vacuum = 0.0;
  double turbulent = 0.0;
  /// retention = turbulent / vacuum for allowed pairs, leakage = turbulent
  /// for forbidden pairs.
  double score = 0.0;
  std::string note;
};

struct RankResult {
  std::vector<RankEntry> retention;  // allowed pairs, descending
  std::vector<RankEntry> leakage;    // forbidden pairs, descending
  DerivedConstants params;
  Normalization normalization;
  double scale = 1.0;
};

void write_rank_csv(std::ostream& out, const RankResult& rank, const CsvStyle& style = {});
void write_rank_json(std::ostream& out, const RankResult& rank);

}  // namespace hgturb::io
