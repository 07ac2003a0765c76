#pragma once

#include <iosfwd>

namespace pok::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kNumericalFailure = 3,
};

/// Runs the command line front end with the given arguments. Normal output
/// goes to `out` unless --out names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pok::cli
