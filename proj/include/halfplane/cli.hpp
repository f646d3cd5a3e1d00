// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace halfplane::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;          // success, PROVED, PASS
inline constexpr int kNegative = 1;    // REFUTED, FAIL, counterexample found
inline constexpr int kUndecided = 2;   // INCONCLUSIVE, not found, not isomorphic
inline constexpr int kUsage = 3;       // bad arguments
inline constexpr int kInputError = 4;  // unreadable or malformed input

/// Runs one invocation; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace halfplane::cli
