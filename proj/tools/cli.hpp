#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bundle_forge::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kInvalidInput = 2 };

inline constexpr int kMaxCharge = 16;

/// Runs one command. `args` excludes the program name. Output is buffered and
/// written to `out` only when the command completes; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bundle_forge::cli
