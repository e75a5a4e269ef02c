#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schizo::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
    ok = 0,
    usage_error = 1,        ///< bad arguments or a violated precondition
    internal_error = 2,     ///< an internal consistency check failed
    verify_mismatch = 3,    ///< verify found a block that does not match
};

/// Runs one command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schizo::cli
