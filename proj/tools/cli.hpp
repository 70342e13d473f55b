#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nilsampler::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;

/// Runs one command line (without the program name). Artifacts go to the paths
/// named on the command line or in the config, everything else to out/err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilsampler::cli
