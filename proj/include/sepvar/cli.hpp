#pragma once

#include <iosfwd>

namespace sepvar::cli {

enum ExitCode : int { kPass = 0, kVerificationFailed = 1, kUsageError = 2, kNumericFailure = 3 };

/// Entry point of the `sepvar` tool; reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sepvar::cli
