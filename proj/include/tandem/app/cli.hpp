#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tandem::app {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kUsage = 1, kUnstable = 2, kNoData = 3 };

/// Entry point of the `tandem-aoi` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tandem::app
