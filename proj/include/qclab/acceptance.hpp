#pragma once

// The end-to-end acceptance checks, shared by the test binary and the
// `selftest` command.

#include <string>
#include <vector>

namespace qclab {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

constexpr int kCriterionCount = 7;

/// Runs criterion `id` (1..7). Exceptions thrown by the library count as a
/// failure and end up in `detail`.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance();

/// "PASS [3] ghost-force scalings (0.12 s): ..."
std::string format_result(const CriterionResult& result);

}  // namespace qclab
