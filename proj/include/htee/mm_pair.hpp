#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>

#include "htee/box.hpp"

namespace htee {

/// Mixed-monotonic representation F(x, y) of a target function f.
///
/// F is nondecreasing in x, nonincreasing in y, and F(x, x) = f(x) on the
/// enclosing box. Neither property is checked at construction; the test
/// suite samples them.
class MMPair {
 public:
  using Evaluator = std::function<double(std::span<const double>, std::span<const double>)>;
  /// Any valid upper bound on max over [lower, upper] of the diagonal.
  using BoxBound = std::function<double(std::span<const double> lower, std::span<const double> upper)>;

  MMPair() = default;
  MMPair(std::size_t arity, Evaluator eval) : arity_(arity), eval_(std::move(eval)) {}

  static MMPair constant(std::size_t arity, double c);

  std::size_t arity() const { return arity_; }
  /// Set only for pairs built by constant(); lets solvers skip evaluation.
  std::optional<double> constant_value() const { return constant_; }
  explicit operator bool() const { return static_cast<bool>(eval_); }

  double operator()(std::span<const double> x, std::span<const double> y) const {
    return eval_(x, y);
  }
  double diagonal(std::span<const double> x) const { return eval_(x, x); }

  /// Attaches a second upper bound; refined_upper_bound() takes the smaller.
  MMPair& set_upper_refinement(BoxBound b) {
    refine_upper_ = std::move(b);
    return *this;
  }
  const BoxBound& upper_refinement() const { return refine_upper_; }
  /// Attaches a second lower bound; refined_lower_bound() takes the larger.
  MMPair& set_lower_refinement(BoxBound b) {
    refine_lower_ = std::move(b);
    return *this;
  }
  const BoxBound& lower_refinement() const { return refine_lower_; }

 private:
  std::size_t arity_ = 0;
  Evaluator eval_;
  std::optional<double> constant_;
  BoxBound refine_upper_;
  BoxBound refine_lower_;
};

/// G(lower, upper): a lower bound on min over the box of G(x, x).
/// Throws std::domain_error if the evaluation is not finite.
double lower_bound_min(const MMPair& g, const Box& box);

/// F(upper, lower): an upper bound on max over the box of F(x, x).
/// Throws std::domain_error if the evaluation is not finite.
double upper_bound_max(const MMPair& f, const Box& box);

/// min(F(upper, lower), refinement) when a refinement is attached.
double refined_upper_bound(const MMPair& f, std::span<const double> lower, std::span<const double> upper);
double refined_upper_bound(const MMPair& f, const Box& box);

/// max(G(lower, upper), refinement) when a refinement is attached.
double refined_lower_bound(const MMPair& g, std::span<const double> lower, std::span<const double> upper);
double refined_lower_bound(const MMPair& g, const Box& box);

}  // namespace htee
