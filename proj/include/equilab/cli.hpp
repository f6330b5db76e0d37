#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace equilab::cli {

/// Exit codes: 0 success/pass, 1 semantic failure, 2 usage or validation.
enum ExitCode : int { kOk = 0, kFail = 1, kUsage = 2 };

/// Runs the command line `args` (args[0] is the program name). Paths equal
/// to "-" refer to `in` / `out`; diagnostics go to `err` as one line.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace equilab::cli
