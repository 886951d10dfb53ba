#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace transnn::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kSuccess = 0, kValidationFailure = 1, kUsageError = 2 };

/// Entry point of the `transnn` tool.
int run(int argc, char** argv);

/// Same as above with explicit arguments (excluding the program name) and
/// output streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace transnn::cli
