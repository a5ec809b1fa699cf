#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace axent::cli {

// Exit statuses of the command-line tool.
inline constexpr int kOk = 0;
inline constexpr int kComputationFailed = 1;  // budget exceeded, non-convergence, failed verification
inline constexpr int kConfigError = 2;        // bad flags, unknown preset, malformed matrix

// Runs the tool on `args` (without the program name). Reports go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace axent::cli
