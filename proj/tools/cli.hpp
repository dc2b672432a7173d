#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cfsem::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2 };

// Runs one command line (without the program name). Reports go to `out`,
// diagnostics to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfsem::cli
