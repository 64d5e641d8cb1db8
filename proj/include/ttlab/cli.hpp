#pragma once

#include <iosfwd>

namespace ttlab {

/// The `ttlab` command line. Returns the process exit code: 0 success, 2 validation
/// failure, 3 budget exhaustion, 1 anything unexpected.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ttlab
