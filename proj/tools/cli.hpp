#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dtc::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs the `dtc` command line; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dtc::cli
