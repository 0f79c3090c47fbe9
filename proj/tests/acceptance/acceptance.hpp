#pragma once

// The nine acceptance criteria, each checked against independent oracles
// and timed against its runtime limit.

#include <iosfwd>
#include <string>
#include <vector>

namespace cmg::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

inline constexpr int kCriterionCount = 9;

CriterionResult run_criterion(int id);

/// Runs the criteria in `ids` (all when empty), printing each line to
/// `progress` as it finishes.
std::vector<CriterionResult> run_all(const std::vector<int>& ids, std::ostream& progress);

/// "PASS [n] title (detail) 0.12s/1s"
std::string format_line(const CriterionResult& result);

} // namespace cmg::acceptance
