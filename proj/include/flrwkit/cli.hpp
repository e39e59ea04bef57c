#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flrwkit {

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_internal = 1, exit_config = 2, exit_verification = 3 };

/// Runs the command-line tool on `args` (program name excluded). Reports go to
/// the --out path or to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flrwkit
