#pragma once

#include <ostream>

namespace bnladder::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kComputation = 2,
  kSelfcheckFailed = 3,
};

/// Entry point of the `bnladder` tool. Files named by --out are written only
/// after every computation has succeeded; without --out the primary output
/// goes to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bnladder::cli
