#pragma once

#include <iosfwd>

namespace permix {

/// Entry point behind the `permix` binary. Exit codes: 0 = all assertions
/// passed, 1 = a mathematical assertion failed, 2 = usage or input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace permix
