// Acceptance gate. Prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any fails. With --criterion N only that criterion decides the
// exit status; the realness check (8) always sees every other criterion's Pi.

#include <cstring>
#include <iostream>
#include <string>

#include "hgturb/validation.hpp"

int main(int argc, char** argv) {
  int only = 0;
  for (int j = 1; j < argc; ++j) {
    if (std::strcmp(argv[j], "--criterion") == 0 && j + 1 < argc) only = std::stoi(argv[++j]);
  }

  hgturb::validation::Options options;
  options.diagnostics = only == 0;
  const hgturb::validation::Report report = hgturb::validation::run(options);
  hgturb::validation::write_report_text(std::cout, report);

  bool passed = true;
  for (const auto& c : report.criteria) {
    if (only == 0 || c.id == only) passed = passed && c.passed;
  }
  return passed ? 0 : 1;
}
