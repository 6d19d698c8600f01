#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ultracat {

// One acceptance criterion: a named property suite with a pinned budget.
struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;     // deterministic one-line summary of what was checked
  double seconds = 0.0;   // wall time of this criterion alone
  double budget = 0.0;    // pinned runtime bound in seconds
};

const std::vector<std::string>& criterion_names();

// Runs every criterion whose name contains `filter` (all when empty).
// The seed drives the randomized suites; identical seeds give identical
// pass/fail results and detail strings.
std::vector<CriterionResult> run_selftest(const std::string& filter, std::uint64_t seed);

// Deterministic text report: one PASS/FAIL line per criterion plus a
// summary line.  Excludes timing so equal inputs give equal bytes.
std::string selftest_report(const std::vector<CriterionResult>& results);

}  // namespace ultracat
