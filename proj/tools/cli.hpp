#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cgra::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,       ///< bad arguments or invalid input content
  kIo = 3,          ///< unreadable input or unwritable output
  kDoesNotFit = 4,  ///< a DFG cannot be mapped onto the requested fabric
};

/// Runs `cgrasim` with `args` (excluding the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cgra::cli
