#pragma once

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "htee/box.hpp"
#include "htee/network.hpp"

namespace htee::test {

// 2-user network with unit noise, unit bandwidth and full cross gain.
inline InterferenceNetwork symmetric_pair() {
  return InterferenceNetwork({1.0, 1.0}, {0.0, 1.0, 1.0, 0.0}, {1.0, 1.0}, 1.0);
}

inline InterferenceNetwork single_link(double alpha = 1.0, double sigma2 = 1.0, double bandwidth = 1.0) {
  return InterferenceNetwork({alpha}, {0.0}, {sigma2}, bandwidth);
}

// Gains spread over a few decades so both weak and strong coupling show up.
inline InterferenceNetwork random_network(std::mt19937_64& rng, std::size_t n, double bandwidth = 1.0) {
  std::uniform_real_distribution<double> decade(-1.0, 1.0);
  std::vector<double> alpha(n), beta(n * n, 0.0), sigma2(n);
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i] = std::pow(10.0, decade(rng));
    sigma2[i] = std::pow(10.0, 0.5 * decade(rng));
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) beta[i * n + j] = std::pow(10.0, decade(rng) - 0.5);
    }
  }
  return InterferenceNetwork(std::move(alpha), std::move(beta), std::move(sigma2), bandwidth);
}

inline Box random_box(std::mt19937_64& rng, std::span<const double> limits) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> lo(limits.size()), hi(limits.size());
  for (std::size_t i = 0; i < limits.size(); ++i) {
    double a = u(rng) * limits[i], b = u(rng) * limits[i];
    if (a > b) std::swap(a, b);
    lo[i] = a;
    hi[i] = b;
  }
  return Box(std::move(lo), std::move(hi));
}

inline std::vector<double> random_point(std::mt19937_64& rng, const Box& box) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) x[i] = box.lower(i) + u(rng) * box.width(i);
  return x;
}

}  // namespace htee::test
