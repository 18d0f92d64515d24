#pragma once

#include <ostream>

namespace oddkh {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,  // domain answer "no" or a failed check
  kExitUsage = 2,     // usage, I/O or parse error
  kExitInternal = 3,  // internal consistency failure
};

/// Entry point of the `oddkh` tool with injectable streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oddkh
