#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stepline {

/// Exit codes of the command-line front end.
enum ExitCode : int { kPass = 0, kCheckFailure = 1, kBreakdown = 2, kConfigError = 3 };

/// Entry point of the `stepline` tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace stepline
