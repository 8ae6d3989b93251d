#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hgturb/errors.hpp"
#include "hgturb/io.hpp"

using namespace hgturb;

namespace {

ProbabilityMatrix weak_matrix() {
  static const ProbabilityModel model(derive_constants(OpticalConfig{}, TurbulenceSpec::from_rytov(0.02)));
  const auto modes = default_mode_ordering();
  return probability_matrix(modes, model);
}

}  // namespace

TEST(Io, FormatNumber) {
  EXPECT_EQ(io::format_number(0.313070001, {}), "0.31307");
  EXPECT_EQ(io::format_number(0.0, {}), "0.00000");
  EXPECT_EQ(io::format_number(0.000123456789, io::CsvStyle::significant_digits(3)), "0.000123");
}

TEST(Io, JsonRoundTripIsBitExact) {
  const ProbabilityMatrix m = weak_matrix();
  std::stringstream buffer;
  io::write_matrix_json(buffer, m);
  const io::MatrixDocument doc = io::read_matrix_json(buffer);
  ASSERT_EQ(doc.values.size(), m.values.size());
  for (std::size_t j = 0; j < m.values.size(); ++j) EXPECT_EQ(doc.values[j], m.values[j]);
  EXPECT_EQ(doc.ordering.front(), "00");
  EXPECT_EQ(doc.ordering.back(), "30");
  EXPECT_EQ(doc.normalization_mode, "calibrated");
  EXPECT_EQ(doc.reference_pair, "(00,00)");
  EXPECT_EQ(doc.reference_value, kVacuumReferenceValue);
}

TEST(Io, CsvAgreesWithJsonToTwelveDigits) {
  const ProbabilityMatrix m = weak_matrix();
  std::stringstream csv;
  io::write_matrix_csv(csv, m, io::CsvStyle::significant_digits(12));
  const io::MatrixDocument doc = io::read_matrix_csv(csv);
  ASSERT_EQ(doc.values.size(), m.values.size());
  for (std::size_t j = 0; j < m.values.size(); ++j) {
    EXPECT_NEAR(doc.values[j], m.values[j], 5e-12 * std::abs(m.values[j]));
  }
  EXPECT_EQ(doc.normalization_mode, "calibrated");
}

TEST(Io, CsvLayout) {
  const ProbabilityMatrix m = weak_matrix();
  std::stringstream csv;
  io::write_matrix_csv(csv, m);
  const std::string text = csv.str();
  for (const char* key : {"# wavelength_m=", "# distance_m=", "# pump_waist_m=", "# rytov=0.02",
                          "# gamma=", "# w_variant=propagated", "# normalization=calibrated"}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
  EXPECT_NE(text.find("\nsignal\\idler,00,01,10,02,11,20,03,12,21,30\n"), std::string::npos);
  EXPECT_NE(text.find("\n00,0.23134,"), std::string::npos);
}

TEST(Io, MalformedInput) {
  std::stringstream bad_json("{\"ordering\": [\"00\"], \"matrix\": [[1, 2]]}");
  EXPECT_THROW(io::read_matrix_json(bad_json), DomainError);
  std::stringstream not_json("not json");
  EXPECT_THROW(io::read_matrix_json(not_json), DomainError);
  std::stringstream bad_csv("x,00,01\n00,1,2\n01,3\n");
  EXPECT_THROW(io::read_matrix_csv(bad_csv), DomainError);
  std::stringstream bad_number("x,00\n00,abc\n");
  EXPECT_THROW(io::read_matrix_csv(bad_number), DomainError);
}

TEST(Io, SweepCsvColumns) {
  io::SweepResult sweep;
  sweep.grid = {0.0, 0.01};
  sweep.pairs = {ModePair{}, ModePair{{0, 0}, {0, 1}}};
  sweep.series = {{0.31307, 0.27}, {0.0, 0.009}};
  sweep.params = derive_constants(OpticalConfig{}, 0.0);
  std::stringstream out;
  io::write_sweep_csv(out, sweep);
  const std::string text = out.str();
  EXPECT_NE(text.find("\nrytov,\"P(00,00)\",\"P(00,01)\"\n0,0.31307,0.00000\n0.01,0.27000,0.00900\n"),
            std::string::npos)
      << text;
}
