#pragma once

#include <iosfwd>

namespace causticlab {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitDegenerate = 3 };

// Full command line, including argv[0]. Reports go to `out`, diagnostics to
// `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace causticlab
