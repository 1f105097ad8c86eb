#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace msing {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;      // verify/moduli check failed, other runtime errors
inline constexpr int kExitUsage = 2;        // unparsable arguments, n out of range
inline constexpr int kExitNotListed = 3;    // witness: entry not in classify(n)
inline constexpr int kExitExhausted = 4;    // witness: retry bound reached

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace msing
