#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace probeboost::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,   // bad flags, config files or hyperparameters
    kDataError = 3,     // unreadable or unusable input data
    kRuntimeError = 4,  // anything else
};

// Entry point behind the probeboost executable. args excludes the program
// name. Results go to files or `out` ("-" as output path); diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace probeboost::cli
