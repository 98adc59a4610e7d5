#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nrdmft::cli {

// Exit codes of every subcommand.
enum ExitCode : int { kSuccess = 0, kInputError = 1, kNotConverged = 2, kNumericalFailure = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace nrdmft::cli
