#pragma once

// Randomized invariant suites behind `bifun check`.

#include <cstdint>
#include <string>
#include <vector>

namespace bifun::checks {

struct SuiteOptions {
  std::uint64_t seed = 20240607;
  int instances = 200;
};

struct SuiteResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  int skipped = 0;  // instances excluded by a documented precondition (improper composites)
  std::vector<std::string> failures;
  double worst_error_ratio = 0.0;  // oracle suite: max error / tolerance over instances

  bool ok() const { return failed == 0 && passed > 0; }
};

/// conjugation, adjoint-functor, gauss-functor, frobenius, oracle
const std::vector<std::string>& suite_names();

/// Throws UnknownSuite for any other name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options = {});

/// One line: "<name>: <passed>/<total> passed[, <skipped> skipped]".
std::string summary(const SuiteResult& r);

}  // namespace bifun::checks
