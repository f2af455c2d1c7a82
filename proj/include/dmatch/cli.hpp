#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dmatch {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitYes = 0, kExitNo = 1, kExitUsage = 2, kExitResource = 3 };

/// Runs one command line (without the program name), writing results to
/// `out` and diagnostics to `err`.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dmatch
