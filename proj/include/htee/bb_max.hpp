#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "htee/box.hpp"
#include "htee/mm_pair.hpp"
#include "htee/solution.hpp"

namespace htee {

enum class Selection { BestFirst, OldestFirst };

struct BbProgress {
  std::uint64_t iteration;
  std::size_t active;     // boxes left after this iteration
  double best_bound;      // max upper bound over active boxes, -inf when empty
  double incumbent;       // -inf while no feasible point is known
};

struct SolverConfig {
  double eta = 0.01;             // absolute optimality tolerance
  double eps_feas = 1e-9;        // candidate accepted iff constraint diagonal <= eps_feas
  std::uint64_t node_budget = 10'000'000;
  Selection selection = Selection::BestFirst;
  std::optional<double> time_budget;  // seconds
  std::function<void(const BbProgress&)> on_iteration;

  void validate() const;
};

/// Globally maximizes objective(x, x) over box subject to
/// constraint(x, x) <= 0, both given in mixed-monotonic form.
///
/// On Optimal the value is within eta of the global maximum. Boxes whose
/// best-case constraint value constraint(lower, upper) is positive are
/// discarded; candidates are both box corners.
Solution maximize(const MMPair& objective, const MMPair& constraint, const Box& box,
                  const SolverConfig& cfg);

/// Unconstrained overload.
Solution maximize(const MMPair& objective, const Box& box, const SolverConfig& cfg);

}  // namespace htee
