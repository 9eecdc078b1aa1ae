#include "htee/mm_pair.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace htee {

MMPair MMPair::constant(std::size_t arity, double c) {
  MMPair m(arity, [c](std::span<const double>, std::span<const double>) { return c; });
  m.constant_ = c;
  return m;
}

namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::domain_error(std::string(what) + ": non-finite evaluation");
  }
  return v;
}

}  // namespace

double lower_bound_min(const MMPair& g, const Box& box) {
  return checked(g(box.lower(), box.upper()), "lower_bound_min");
}

double upper_bound_max(const MMPair& f, const Box& box) {
  return checked(f(box.upper(), box.lower()), "upper_bound_max");
}

double refined_upper_bound(const MMPair& f, std::span<const double> lower, std::span<const double> upper) {
  double b = checked(f(upper, lower), "upper_bound_max");
  if (f.upper_refinement()) b = std::min(b, f.upper_refinement()(lower, upper));
  return b;
}

double refined_upper_bound(const MMPair& f, const Box& box) {
  return refined_upper_bound(f, box.lower(), box.upper());
}

double refined_lower_bound(const MMPair& g, std::span<const double> lower, std::span<const double> upper) {
  double b = checked(g(lower, upper), "lower_bound_min");
  if (g.lower_refinement()) b = std::max(b, g.lower_refinement()(lower, upper));
  return b;
}

double refined_lower_bound(const MMPair& g, const Box& box) {
  return refined_lower_bound(g, box.lower(), box.upper());
}

}  // namespace htee
