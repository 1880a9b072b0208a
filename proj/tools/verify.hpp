#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cantor::verify {

struct CheckReport {
  std::string name;
  uint64_t trials = 0;
  uint64_t failures = 0;
  double elapsed_ms = 0.0;
};

struct SuiteReport {
  std::string suite;
  uint64_t seed = 0;
  uint64_t trials = 0;  // requested size
  std::vector<CheckReport> checks;
  bool ok() const;
};

const std::vector<std::string>& suite_names();

// Runs the named invariant family with `trials` instances per check (fixed
// enumerations ignore the size).  Deterministic for a fixed (suite, seed,
// trials); throws std::domain_error for unknown suite names.
SuiteReport run_suite(const std::string& suite, uint64_t seed, uint64_t trials);

}  // namespace cantor::verify
