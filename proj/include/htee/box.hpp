#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace htee {

/// Closed axis-aligned box [lower, upper] in power space.
///
/// Components are finite, nonnegative and lower <= upper. Children produced
/// by bisect() share their split facet with their sibling.
class Box {
 public:
  Box() = default;
  Box(std::vector<double> lower, std::vector<double> upper);

  /// [0, upper]
  static Box from_origin(std::vector<double> upper);

  std::size_t dim() const { return lower_.size(); }
  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }
  double lower(std::size_t i) const { return lower_[i]; }
  double upper(std::size_t i) const { return upper_[i]; }

  double width(std::size_t i) const { return upper_[i] - lower_[i]; }
  double max_width() const;
  /// Index of the longest edge, lowest index on ties.
  std::size_t longest_edge() const;
  bool degenerate() const { return max_width() <= 0.0; }
  bool contains(std::span<const double> x) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  friend std::pair<Box, Box> bisect(const Box& box);
  friend struct BoxAccess;

  std::vector<double> lower_;
  std::vector<double> upper_;
};

/// Longest edge of [lower, upper], lowest index on ties.
std::size_t split_dimension(std::span<const double> lower, std::span<const double> upper);

/// Splits the box at the midpoint of its longest edge.
///
/// Returns (M-, M+) where M- keeps the lower half of the split edge.
/// Throws std::invalid_argument if every edge has zero width.
std::pair<Box, Box> bisect(const Box& box);

/// Unchecked mutation for solver internals that only shrink upper corners.
struct BoxAccess {
  static std::vector<double>& upper(Box& box) { return box.upper_; }
};

}  // namespace htee
