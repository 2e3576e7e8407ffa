#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace freespec::cli {

/// Exit codes of `run`.
enum ExitCode : int {
  kOk = 0,
  kDomainError = 1,  // point outside, unbounded set, unsupported field
  kUsageError = 2,
  kNumericalFailure = 3,
};

/// Runs one command line (args excludes the program name). JSON results go
/// to `out` unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freespec::cli
