#pragma once

// Property suites over random elements: orders, axioms, generators, braid, welldef.

#include <cstdint>
#include <string>
#include <vector>

namespace bft {

struct CheckResult {
  std::string name;
  long trials = 0;
  long violations = 0;
  std::string detail;  // first violation, if any
  bool passed() const { return violations == 0; }
};

struct SuiteResult {
  std::string suite;
  int arity = 0;
  std::vector<CheckResult> checks;
  double seconds = 0;
  bool passed() const;
  std::string text() const;
};

struct SuiteOptions {
  int arity = 2;
  int samples = 300;
  std::uint64_t seed = 1;
};

std::vector<std::string> suite_names();
/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts);

std::string suites_json(const std::vector<SuiteResult>& results);

}  // namespace bft
