#pragma once

#include <string>
#include <vector>

#include "cveacc/io.hpp"

namespace cveacc {

struct SyndromeSample {
  int mode = 1;
  double p = 0.0;
  double x = 0.0;
  Vector expected;
};

// The four-mode entanglement-assisted example: the rows before symplectic
// Gram-Schmidt, the resulting parity check, its parameters and sampled
// single-mode syndromes.
struct Fixtures {
  ParityCheck original;
  ParityCheck H;
  CodeParameters params;
  std::vector<SyndromeSample> syndromes;
};

Fixtures worked_example_fixtures();

Fixtures fixtures_from_json(const Json& j);
Json to_json(const Fixtures& f);

struct SelftestCheck {
  std::string name;
  bool passed = false;
  double deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// Never throws for bad fixtures; failures become failed checks.
std::vector<SelftestCheck> run_selftest(const Fixtures& fixtures);

Json to_json(const std::vector<SelftestCheck>& checks);

}  // namespace cveacc
