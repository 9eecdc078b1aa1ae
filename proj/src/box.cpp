#include "htee/box.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace htee {

Box::Box(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw std::invalid_argument("Box: corner dimensions differ");
  }
  if (lower_.empty()) {
    throw std::invalid_argument("Box: zero dimension");
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    const double lo = lower_[i];
    const double hi = upper_[i];
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw std::invalid_argument("Box: non-finite corner in dimension " + std::to_string(i));
    }
    if (lo < 0.0) {
      throw std::invalid_argument("Box: negative lower corner in dimension " + std::to_string(i));
    }
    if (lo > hi) {
      throw std::invalid_argument("Box: lower > upper in dimension " + std::to_string(i));
    }
  }
}

Box Box::from_origin(std::vector<double> upper) {
  std::vector<double> lower(upper.size(), 0.0);
  return Box(std::move(lower), std::move(upper));
}

double Box::max_width() const {
  double w = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) w = std::max(w, width(i));
  return w;
}

std::size_t split_dimension(std::span<const double> lower, std::span<const double> upper) {
  std::size_t j = 0;
  double best = upper[0] - lower[0];
  for (std::size_t i = 1; i < lower.size(); ++i) {
    if (upper[i] - lower[i] > best) {
      best = upper[i] - lower[i];
      j = i;
    }
  }
  return j;
}

std::size_t Box::longest_edge() const { return split_dimension(lower_, upper_); }

bool Box::contains(std::span<const double> x) const {
  if (x.size() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
  }
  return true;
}

std::pair<Box, Box> bisect(const Box& box) {
  if (box.dim() == 0 || box.degenerate()) {
    throw std::invalid_argument("bisect: box is degenerate in every dimension");
  }
  const std::size_t j = box.longest_edge();
  const double mid = 0.5 * (box.lower_[j] + box.upper_[j]);

  std::pair<Box, Box> out{box, box};
  out.first.upper_[j] = mid;
  out.second.lower_[j] = mid;
  return out;
}

}  // namespace htee
