#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "slicyl/error.hpp"

namespace slicyl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitBenchMismatch = 70;

/// Process exit status for a module error; one code per ErrorCode.
int exit_code(ErrorCode code);

/// Runs the `slicyl` command line (args exclude the program name) and
/// returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slicyl::cli
