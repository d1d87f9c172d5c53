#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cyclescope {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kExitOk = 0,        // result consistent with the theory, or input valid
    kExitAnomaly = 1,   // anomaly found, or input cycle invalid
    kExitUsage = 2,     // bad arguments or malformed input
    kExitIo = 3,        // file could not be read or written
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --output is given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclescope
