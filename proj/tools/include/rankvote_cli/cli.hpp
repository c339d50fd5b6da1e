#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rankvote::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kVerificationFailed = 2,
  kTie = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; `in` backs the "-" input path.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace rankvote::cli
