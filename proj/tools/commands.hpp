#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ein::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitGeometry = 2;

// Runs one subcommand. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ein::cli
