#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qqg {

/// One identity check: the largest residual seen and the bound it must stay under.
struct CheckResult {
  std::string suite;
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool passed() const { return residual < threshold; }
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  void add(std::string suite, std::string name, double residual, double threshold) {
    checks.push_back({std::move(suite), std::move(name), residual, threshold});
  }
  void append(const VerifyReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed()) return false;
    }
    return !checks.empty();
  }
};

/// Fixed-width residual table, one line per check.
void print_report(const VerifyReport& report, std::ostream& os);

}  // namespace qqg
