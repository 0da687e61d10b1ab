#include "qqg/report.hpp"

#include <cstdio>

namespace qqg {

void print_report(const VerifyReport& report, std::ostream& os) {
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-44s %12s %12s  %s\n", "suite", "check", "residual",
                "threshold", "status");
  os << line;
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "%-10s %-44s %12.3e %12.3e  %s\n", c.suite.c_str(), c.name.c_str(),
                  c.residual, c.threshold, c.passed() ? "PASS" : "FAIL");
    os << line;
  }
}

}  // namespace qqg
