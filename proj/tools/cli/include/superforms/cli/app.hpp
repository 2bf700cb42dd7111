#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace superforms::cli {

enum ExitStatus { kOk = 0, kVerificationFailed = 1, kUsageError = 2, kEngineError = 3 };

// Runs the command line (without the program name). Output goes to `out`
// unless -o redirects it; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace superforms::cli
