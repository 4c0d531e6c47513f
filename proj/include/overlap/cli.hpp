#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace overlap::cli {

enum ExitCode : int {
    kSuccess = 0,
    kFailure = 1,
    kInputError = 2,
    kContractViolation = 3,
    kMetricUndefined = 4,
};

/// Runs one command line (args[0] is the program name). Structured output goes
/// to `out` or the --out file, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace overlap::cli
