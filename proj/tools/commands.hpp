#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stochrel::cli {

/// Exit codes shared by every command.
enum ExitCode : int { positive = 0, negative = 1, error = 2 };

/// Runs the command line `args` (args[0] is the program name). The JSON
/// report goes to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stochrel::cli
