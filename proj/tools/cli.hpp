// The qgx command line: rmatrix, verify, reps, classical and report.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgx::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kRuntime = 3 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Largest N accepted without --unsafe-large.
int rank_ceiling(char series);

/// Parses and runs one command line. Reports go to `out` (or --out), errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qgx::cli
