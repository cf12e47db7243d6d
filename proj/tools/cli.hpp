#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ndirac::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kParseError = 2, kDegenerate = 3, kNumerical = 4 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ndirac::cli
