#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rbminit::cli {

/// Exit codes: 0 success, 1 runtime failure, 2 usage error.
enum ExitCode : int { kOk = 0, kRuntimeFailure = 1, kUsage = 2 };

/// Runs one command line (args excludes the program name) against the given streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace rbminit::cli
