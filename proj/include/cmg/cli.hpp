#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmg::cli {

enum ExitCode : int {
  kOk = 0,
  kViolated = 1, ///< property violated, no object found, hypothesis failed
  kUsage = 2,    ///< bad arguments or malformed input
  kBudget = 3,   ///< search budget exhausted before an answer
};

/// Runs one command line (without the program name). Graph arguments given
/// as "-" or omitted are read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

} // namespace cmg::cli
