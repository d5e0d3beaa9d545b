#pragma once

#include <iosfwd>

namespace curveopt {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitSolverFailure = 1, kExitUsage = 2 };

/// Parses argv and runs one of the subcommands run, bench, profile, check,
/// figure-sc. Results go to `out`, diagnostics to `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace curveopt
