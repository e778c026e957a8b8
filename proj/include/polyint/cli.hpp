#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polyint::cli {

enum ExitCode { ok = 0, input_error = 1, rejected = 2 };

/// Runs one command line (args[0] is the program name). Results go to --out
/// when given, else to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyint::cli
