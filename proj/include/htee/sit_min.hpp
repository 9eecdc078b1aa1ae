#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "htee/box.hpp"
#include "htee/mm_pair.hpp"
#include "htee/solution.hpp"

namespace htee {

struct SitConfig {
  double eps = 1e-5;   // essential-feasibility margin on the constraint
  double eta = 0.01;   // minimum incumbent improvement, objective units
  std::uint64_t node_budget = 10'000'000;
  std::optional<double> time_budget;  // seconds

  void validate() const;
};

/// Nondecreasing objective, evaluated on points.
using Objective = std::function<double(std::span<const double>)>;

/// Shrinks the upper corner of [lower, upper] in place, keeping every point
/// with objective <= gamma. Returns false when no such point is left.
using BoxReducer = std::function<bool(std::span<const double> lower, std::span<double> upper, double gamma)>;

/// Per-iteration counters of minimize_sit.
struct SitIteration {
  std::uint64_t k;
  std::size_t active;
  double gamma;
  bool incumbent_updated;
  std::size_t reduced_away;    // children emptied by the reducer
  std::size_t pruned_objective;
  std::size_t pruned_constraint;
};

struct SitOptions {
  /// Known feasible point; sets gamma = f(x) - eta at start.
  std::optional<std::vector<double>> warm_start;
  /// One line per iteration: k active gamma updated reduced pruned_f pruned_g
  std::ostream* trace = nullptr;
  std::function<void(const SitIteration&)> on_iteration;
  /// Called with every box taken from the active list, in extraction order.
  std::function<void(const Box&)> on_extract;
};

/// [r, s'] with s'_i = min(s_i, gamma - sum_{j != i} r_j); empty when
/// s'_i < r_i for some i.
bool reduce_powersum(std::span<const double> lower, std::span<double> upper, double gamma);
std::optional<Box> reduce_box_powersum(const Box& box, double gamma);

/// Identity reducer (keeps the box unless its lower corner already exceeds gamma).
bool reduce_none(std::span<const double> lower, std::span<double> upper, double gamma);

double sum_power(std::span<const double> p);

/// Minimizes f(x) subject to g(x) = constraint(x, x) <= 0 over box0.
///
/// Successive incumbent transcending combined with an oldest-first
/// branch-and-bound over boxes. The returned point is feasible as evaluated,
/// and every point with g <= -eps has objective >= value - eta. Infeasible
/// means no point with g <= -eps exists.
Solution minimize_sit(const Objective& f, const MMPair& constraint, const Box& box0,
                      const BoxReducer& reducer, const SitConfig& cfg, const SitOptions& opts = {});

}  // namespace htee
