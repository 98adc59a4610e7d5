#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nrdmft {

struct SuiteRow {
  std::string name;
  bool passed = false;
  double worst = 0.0;  // largest violation observed
  double tolerance = 0.0;
};

// Randomized invariant checks of the exact-diagonalization oracle. Identical
// seeds give identical rows.
std::vector<SuiteRow> run_oracle_suite(std::uint64_t seed);

}  // namespace nrdmft
