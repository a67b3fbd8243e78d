#pragma once

#include <iosfwd>

namespace stringc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidSpec = 2;
inline constexpr int kExitComputation = 3;

/// Entry point of the stringc command line tool. Results go to out,
/// diagnostics to err; the return value is the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stringc
