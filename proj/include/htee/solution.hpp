#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace htee {

enum class SolveStatus { Optimal, Infeasible, BudgetExhausted };

std::string to_string(SolveStatus status);

/// Result of a branch-and-bound run.
///
/// On BudgetExhausted, point and value hold the best incumbent found so far
/// (point is empty when none was found).
struct Solution {
  std::vector<double> point;
  double value = 0.0;
  SolveStatus status = SolveStatus::Infeasible;
  std::uint64_t nodes = 0;
  double wall_time = 0.0;  // seconds

  bool has_point() const { return !point.empty(); }
};

}  // namespace htee
