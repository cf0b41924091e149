#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hardylab::cli {

enum ExitCode : int { kSuccess = 0, kValidationError = 1, kNumericalFailure = 2 };

/// Parses `args` (without the program name) and runs one subcommand:
/// constants, classify, hardy, forms, sharpness, evolve. The document goes
/// to `out` (or --output-path) only on success; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardylab::cli
