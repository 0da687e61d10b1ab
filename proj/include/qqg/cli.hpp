#pragma once
// `qqg` command line: solve, verify, rossby, lagrangian, spectrum.
// Exit codes: 0 pass, 1 failure (check failed, numerical blow-up, I/O), 2 usage
// or configuration error.

#include <ostream>
#include <string>
#include <vector>

namespace qqg::cli {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// `args` excludes the program name.
int main_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int main_cli(int argc, char** argv);

}  // namespace qqg::cli
