#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uq2 {

// Exit codes of the command-line front end.
inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitAssertion = 2;

// Runs one subcommand.  `args` excludes the program name.  The report goes to
// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace uq2
