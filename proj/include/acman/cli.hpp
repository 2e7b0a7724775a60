#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace acman::cli {

// Exit codes. Decision commands map the verdict to 0/1/2.
inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitUndetermined = 2;
inline constexpr int kExitInputError = 64;

/// Runs the command line (args excludes the program name). With --json,
/// exactly one JSON document is written to `out`, errors included.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace acman::cli
