#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace lerc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;

/// Runs one subcommand. `args` excludes the program name. Returns 0 on
/// success, 2 for a well-formed negative result (not certified, oracle gap
/// exceeded, finite-gain violation) and 1 for usage or internal errors.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lerc::cli
