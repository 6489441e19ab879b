#pragma once

#include <iosfwd>

namespace zeig::cli {

/// Entry point of the `zeig` tool. Subcommands: solve, sweep, check.
/// Exit codes: 0 success, 1 bad input or flags, 2 solver failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zeig::cli
