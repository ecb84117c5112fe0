#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hdensity::cli {

// Stable exit-code contract.
enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kInputError = 2,
    kCapacityError = 3,
    kVerificationMismatch = 4,
};

// Runs the hdensity command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hdensity::cli
