#include "hgturb/io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "hgturb/errors.hpp"
#include "json.hpp"

namespace hgturb::io {

using nlohmann::ordered_json;

namespace {

std::string full_precision(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

ordered_json params_json(const DerivedConstants& d) {
  ordered_json p;
  p["wavelength_m"] = d.config.wavelength;
  p["distance_m"] = d.config.distance;
  p["pump_waist_m"] = d.config.pump_waist;
  p["cn2"] = d.cn2 ? ordered_json(*d.cn2) : ordered_json(nullptr);
  p["rytov"] = d.rytov ? ordered_json(*d.rytov) : ordered_json(nullptr);
  p["gamma"] = d.gamma;
  p["fresnel_ratio"] = d.fresnel;
  p["beam_radius_m"] = d.w;
  p["w_variant"] = to_string(d.options.beam_radius);
  p["cross_term"] = to_string(d.options.cross_term);
  return p;
}

ordered_json normalization_json(const Normalization& n, double scale) {
  ordered_json j;
  j["mode"] = to_string(n.mode);
  j["reference_pair"] = label(n.reference);
  j["reference_value"] = n.reference_value;
  j["scale_factor"] = scale;
  return j;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw DomainError("malformed number '" + text + "'");
  }
}

}  // namespace

std::string format_number(double value, const CsvStyle& style) {
  char buf[64];
  if (style.kind == CsvStyle::Kind::fixed) {
    std::snprintf(buf, sizeof buf, "%.*f", style.digits, value);
  } else {
    std::snprintf(buf, sizeof buf, "%.*g", style.digits, value);
  }
  return buf;
}

std::vector<std::pair<std::string, std::string>> matrix_metadata(const ProbabilityMatrix& m) {
  const auto& d = m.params;
  return {
      {"wavelength_m", full_precision(d.config.wavelength)},
      {"distance_m", full_precision(d.config.distance)},
      {"pump_waist_m", full_precision(d.config.pump_waist)},
      {"cn2", d.cn2 ? full_precision(*d.cn2) : "none"},
      {"rytov", d.rytov ? full_precision(*d.rytov) : "none"},
      {"gamma", full_precision(d.gamma)},
      {"fresnel_ratio", full_precision(d.fresnel)},
      {"beam_radius_m", full_precision(d.w)},
      {"w_variant", std::string(to_string(d.options.beam_radius))},
      {"cross_term", std::string(to_string(d.options.cross_term))},
      {"normalization", std::string(to_string(m.normalization.mode))},
      {"reference_pair", label(m.normalization.reference)},
      {"reference_value", full_precision(m.normalization.reference_value)},
      {"scale_factor", full_precision(m.scale)},
      {"raw_reference", full_precision(m.raw_reference)},
  };
}

void write_matrix_csv(std::ostream& out, const ProbabilityMatrix& m, const CsvStyle& style) {
  for (const auto& [key, value] : matrix_metadata(m)) {
    out << "# " << key << '=' << value << '\n';
  }
  out << "signal\\idler";
  for (const auto& mode : m.ordering) out << ',' << label(mode);
  out << '\n';
  for (std::size_t r = 0; r < m.size(); ++r) {
    out << label(m.ordering[r]);
    for (std::size_t c = 0; c < m.size(); ++c) out << ',' << format_number(m.at(r, c), style);
    out << '\n';
  }
}

void write_matrix_json(std::ostream& out, const ProbabilityMatrix& m) {
  ordered_json j;
  j["params"] = params_json(m.params);
  j["params"]["raw_reference"] = m.raw_reference;
  auto& ordering = j["ordering"] = ordered_json::array();
  for (const auto& mode : m.ordering) ordering.push_back(label(mode));
  auto& rows = j["matrix"] = ordered_json::array();
  for (std::size_t r = 0; r < m.size(); ++r) {
    auto row = ordered_json::array();
    for (std::size_t c = 0; c < m.size(); ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  j["normalization"] = normalization_json(m.normalization, m.scale);
  out << j.dump(2) << '\n';
}

MatrixDocument read_matrix_json(std::istream& in) {
  MatrixDocument doc;
  try {
    const auto j = nlohmann::json::parse(in);
    doc.ordering = j.at("ordering").get<std::vector<std::string>>();
    const auto& rows = j.at("matrix");
    if (rows.size() != doc.ordering.size()) throw DomainError("matrix row count mismatch");
    for (const auto& row : rows) {
      if (row.size() != doc.ordering.size()) throw DomainError("matrix column count mismatch");
      for (const auto& v : row) doc.values.push_back(v.get<double>());
    }
    const auto& n = j.at("normalization");
    doc.normalization_mode = n.at("mode").get<std::string>();
    doc.reference_pair = n.at("reference_pair").get<std::string>();
    doc.reference_value = n.at("reference_value").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed matrix JSON: ") + e.what());
  }
  return doc;
}

MatrixDocument read_matrix_csv(std::istream& in) {
  MatrixDocument doc;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "normalization") doc.normalization_mode = value;
      if (key == "reference_pair") doc.reference_pair = value;
      if (key == "reference_value") doc.reference_value = parse_double(value);
      continue;
    }
    auto cells = split(line, ',');
    if (!header_seen) {
      doc.ordering.assign(cells.begin() + 1, cells.end());
      header_seen = true;
      continue;
    }
    if (cells.size() != doc.ordering.size() + 1) throw DomainError("CSV row width mismatch");
    for (std::size_t c = 1; c < cells.size(); ++c) doc.values.push_back(parse_double(cells[c]));
  }
  if (doc.values.size() != doc.ordering.size() * doc.ordering.size()) {
    throw DomainError("CSV matrix is not square");
  }
  return doc;
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep, const CsvStyle& style) {
  const auto& d = sweep.params;
  out << "# wavelength_m=" << full_precision(d.config.wavelength) << '\n'
      << "# distance_m=" << full_precision(d.config.distance) << '\n'
      << "# pump_waist_m=" << full_precision(d.config.pump_waist) << '\n'
      << "# w_variant=" << to_string(d.options.beam_radius) << '\n'
      << "# cross_term=" << to_string(d.options.cross_term) << '\n'
      << "# normalization=" << to_string(sweep.normalization.mode) << '\n'
      << "# scale_factor=" << full_precision(sweep.scale) << '\n';
  out << "rytov";
  for (const auto& p : sweep.pairs) out << ",\"P" << label(p) << '"';
  out << '\n';
  for (std::size_t g = 0; g < sweep.grid.size(); ++g) {
    out << full_precision(sweep.grid[g]);
    for (const auto& s : sweep.series) out << ',' << format_number(s[g], style);
    out << '\n';
  }
}

void write_sweep_json(std::ostream& out, const SweepResult& sweep) {
  ordered_json j;
  j["params"] = params_json(sweep.params);
  j["grid"] = sweep.grid;
  auto& series = j["series"] = ordered_json::object();
  for (std::size_t p = 0; p < sweep.pairs.size(); ++p) {
    series["P" + label(sweep.pairs[p])] = sweep.series[p];
  }
  j["normalization"] = normalization_json(sweep.normalization, sweep.scale);
  out << j.dump(2) << '\n';
}

void write_rank_csv(std::ostream& out, const RankResult& rank, const CsvStyle& style) {
  out << "# rytov=" << (rank.params.rytov ? full_precision(*rank.params.rytov) : "none") << '\n'
      << "# gamma=" << full_precision(rank.params.gamma) << '\n'
      << "# normalization=" << to_string(rank.normalization.mode) << '\n';
  out << "kind,signal,idler,p_vacuum,p_turbulent,score,note\n";
  auto emit = [&](const char* kind, const std::vector<RankEntry>& entries) {
    for (const auto& e : entries) {
      out << kind << ',' << label(e.pair.signal) << ',' << label(e.pair.idler) << ','
          << format_number(e.vacuum, style) << ',' << format_number(e.turbulent, style) << ','
          << format_number(e.score, style) << ',' << e.note << '\n';
    }
  };
  emit("retention", rank.retention);
  emit("leakage", rank.leakage);
}

void write_rank_json(std::ostream& out, const RankResult& rank) {
  ordered_json j;
  j["params"] = params_json(rank.params);
  auto listing = [](const std::vector<RankEntry>& entries) {
    auto arr = ordered_json::array();
    for (const auto& e : entries) {
      arr.push_back({{"signal", label(e.pair.signal)},
                     {"idler", label(e.pair.idler)},
                     {"p_vacuum", e.vacuum},
                     {"p_turbulent", e.turbulent},
                     {"score", e.score},
                     {"note", e.note}});
    }
    return arr;
  };
  j["retention"] = listing(rank.retention);
  j["leakage"] = listing(rank.leakage);
  j["normalization"] = normalization_json(rank.normalization, rank.scale);
  out << j.dump(2) << '\n';
}

}  // namespace hgturb::io
