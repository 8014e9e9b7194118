#pragma once

#include <string>
#include <vector>

namespace rearr {

/// Runs the command-line front end.  `argv_like[0]` is the program name.
/// Exit codes: 0 success/pass, 1 verification failure, 2 usage error,
/// 3 internal error.
int run_cli(const std::vector<std::string>& argv_like);

}  // namespace rearr
