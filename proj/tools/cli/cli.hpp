#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mengerkit::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCapacity = 3;

/// Runs one command line. `args` excludes the program name. The human summary
/// or, with --json, the machine report goes to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mengerkit::cli
