#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rtcover {

/// Exit codes: 0 every check passed, 1 a check failed, 2 bad input.
enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_input_error = 2 };

/// Entry point of the command-line tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rtcover
