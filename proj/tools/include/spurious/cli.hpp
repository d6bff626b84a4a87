#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spurious {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitDomainError = 1, kExitUsage = 2 };

/// Runs one command line (args[0] is the program name). Normal output goes
/// to `out`, diagnostics and usage text to `err`.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Convenience overload writing to std::cout / std::cerr.
int cli_dispatch(int argc, const char* const* argv);

}  // namespace spurious
