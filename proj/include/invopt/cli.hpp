#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace invopt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// Runs one command line (without the program name). Reports go to out,
// diagnostics to err as single lines prefixed config:, io:, validate: or numerical:.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace invopt::cli
