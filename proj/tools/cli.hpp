#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace smti::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kCheckFailed = 2 };

// Entry point of the `smti` tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smti::cli
