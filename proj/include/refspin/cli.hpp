#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "refspin/error.hpp"

namespace refspin {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitModelInvalid = 3;
inline constexpr int kExitResource = 4;

int exit_code_for(ErrorCode code);

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace refspin
