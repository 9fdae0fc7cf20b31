#pragma once

// Acceptance runner: every check of the laboratory, evaluated for one
// dimension, with measured value, target and tolerance per line.

#include <string>
#include <vector>

namespace onofri {

enum class VerifyLevel { quick, full };

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyReport {
  int n = 0;
  VerifyLevel level = VerifyLevel::quick;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

// Runs checks 1..11. Dimension-specific checks (the disk and transplantation
// checks are two-dimensional) run in their own dimension regardless of n.
// Exceptions inside a check turn into a failed line. Throws DomainError for
// n < 2.
VerifyReport verify_all(int n, VerifyLevel level);

}  // namespace onofri
