#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace macdop::cli {

/// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failed = 1,
    exit_input_error = 2,
};

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`. Returns one of ExitCode.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

} // namespace macdop::cli
