#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nopave::cli {

inline constexpr int kExitOk = 0;           // all checks passed
inline constexpr int kExitCheckFailed = 1;  // a verification or bound check failed
inline constexpr int kExitUsage = 2;        // bad flags or parameters
inline constexpr int kExitIo = 3;           // unreadable or unwritable file
inline constexpr int kExitBudget = 4;       // enumeration budget exceeded

/// Runs the tool on argv-style arguments (subcommand first, no program
/// name); reports go to out, errors to err. Returns one of the exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// main() adapter.
int run(int argc, const char* const* argv);

}  // namespace nopave::cli
