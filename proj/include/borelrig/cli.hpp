#pragma once

#include <iosfwd>

namespace borelrig {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitRefusal = 2, kExitNumerical = 3 };

/// Runs the command line `borelrig <command> [flags]`, writing reports to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace borelrig
