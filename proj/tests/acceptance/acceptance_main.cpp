// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <cstdio>

#include "qclab/acceptance.hpp"

int main() {
  int failed = 0;
  for (int id = 1; id <= qclab::kCriterionCount; ++id) {
    const auto result = qclab::run_criterion(id);
    std::printf("%s\n", qclab::format_result(result).c_str());
    std::fflush(stdout);
    if (!result.passed) ++failed;
  }
  std::printf("%d of %d criteria passed\n", qclab::kCriterionCount - failed, qclab::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
