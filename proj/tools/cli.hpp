#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace onofri::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kNumericalError = 2;
inline constexpr int kUsage = 64;

// Runs one command line (without the program name). Artifacts go to `out`
// (or to the file named by --csv), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace onofri::cli
