#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fairdiv::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairdiv::cli
