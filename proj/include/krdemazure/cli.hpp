#pragma once

// Command-line front end.  The implementation lives in src/cli.cpp so that tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace krd::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kCapExceeded = 3 };

// Runs one invocation.  args excludes the program name.  Everything that would go to stdout is written to
// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace krd::cli
