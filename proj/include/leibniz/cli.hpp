#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace leibniz::cli {

/// Exit codes of run().
enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2, kUndecided = 3 };

/// Runs one command line (args excludes the program name). Results go to
/// out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace leibniz::cli
