#pragma once

// Command-line driver.  Every subcommand writes one JSON report.  Exit codes:
// 0 computed and the property holds, 1 computed and the hypothesis fails,
// 2 input or budget error.

#include <iosfwd>
#include <string>
#include <vector>

namespace hacert::cli {

constexpr int kOk = 0;
constexpr int kHypothesisFails = 1;
constexpr int kInputError = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hacert::cli
