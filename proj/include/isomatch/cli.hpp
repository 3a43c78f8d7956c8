#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace isomatch::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNoPerfectMatching = 1;
inline constexpr int kInputError = 2;
inline constexpr int kInvariantFailure = 3;

// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isomatch::cli
