#pragma once

#include <ostream>

namespace tricolor {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitInternal = 3;

/// Runs the command line. Results go to `out`; traces, seeds and error
/// messages go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tricolor
