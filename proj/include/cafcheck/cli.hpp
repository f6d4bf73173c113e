#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace cafcheck::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    Ok = 0,
    UsageError = 1,
    CapExceeded = 2,
    TimedOut = 3,
    ReplayFailed = 4,
    TableDisagreement = 5,
};

/// Runs the command line `args` (args[0] is the program name), writing
/// reports to `out` and diagnostics to `err`. Returns the exit code.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace cafcheck::cli
