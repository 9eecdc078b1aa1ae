#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "htee/box.hpp"
#include "htee/mm_pair.hpp"

namespace htee {

/// Gaussian interference network with interference treated as noise.
///
/// alpha[i] is the direct gain of link i, beta(i, j) the gain from
/// transmitter j into receiver i (zero diagonal), sigma2[i] the noise power
/// in W and bandwidth in Hz.
class InterferenceNetwork {
 public:
  InterferenceNetwork(std::vector<double> alpha, std::vector<double> beta_row_major,
                      std::vector<double> sigma2, double bandwidth);

  std::size_t size() const { return alpha_.size(); }
  double alpha(std::size_t i) const { return alpha_[i]; }
  double beta(std::size_t i, std::size_t j) const { return beta_[i * size() + j]; }
  double sigma2(std::size_t i) const { return sigma2_[i]; }
  double bandwidth() const { return bandwidth_; }

  std::span<const double> alpha() const { return alpha_; }
  std::span<const double> beta_row_major() const { return beta_; }
  std::span<const double> sigma2() const { return sigma2_; }

  /// Interference plus noise at receiver i when the others transmit with y.
  double interference(std::span<const double> y, std::size_t i) const;

  friend bool operator==(const InterferenceNetwork&, const InterferenceNetwork&) = default;

 private:
  std::vector<double> alpha_;
  std::vector<double> beta_;
  std::vector<double> sigma2_;
  double bandwidth_;
};

/// Dissipated power model: sum_i mu_i p_i + p_static.
struct PowerModel {
  std::vector<double> mu;
  double p_static = 0.0;

  void validate(std::size_t n) const;
  double consumed(std::span<const double> p) const;
};

double sinr(const InterferenceNetwork& net, std::span<const double> p, std::size_t i);
/// bit/s
double rate(const InterferenceNetwork& net, std::span<const double> p, std::size_t i);
double sum_rate(const InterferenceNetwork& net, std::span<const double> p);
/// bit/J
double gee(const InterferenceNetwork& net, const PowerModel& pm, std::span<const double> p);

/// B log2(1 + alpha_i x_i / (sum_{j != i} beta_ij y_j + sigma2_i)).
MMPair rate_mm(const InterferenceNetwork& net, std::size_t i);

enum class ProblemKind { TPmax, GEEmax, PminHTEE };
enum class Sense { Maximize, Minimize };

/// Search coordinates of a problem. LogSnr uses z_i = ln(1 + alpha_i p_i /
/// sigma2_i); the map is increasing per coordinate, so MM structure and box
/// corners carry over, but bisection then splits where rates change most.
enum class Coordinates { Power, LogSnr };

std::string to_string(ProblemKind kind);

struct ProblemSpec {
  ProblemKind kind = ProblemKind::TPmax;
  std::vector<double> r_min;    // bit/s, empty means all zero
  double omega = 1.0;           // PminHTEE only
  std::optional<double> r_star; // bit/s, PminHTEE only
  std::vector<double> p_max;    // W
  Coordinates coordinates = Coordinates::Power;
  /// Attach a mean-value bound (interval gradient on the sum rate): to the
  /// objective of TPmax/GEEmax, to the merged constraint of PminHTEE.
  bool refine_bounds = false;

  void validate(std::size_t n) const;
};

/// An MM-represented problem in solver units.
///
/// Rates inside the objective and constraint are in bit/s/Hz, i.e. divided
/// by the bandwidth, so that solver tolerances are independent of B.
/// GEE objectives are in bit/s/Hz per W. rate_unit converts back to bit/s.
struct Problem {
  ProblemKind kind;
  Sense sense;
  MMPair objective;
  /// Merged constraint: feasible iff constraint.diagonal(p) <= 0.
  MMPair constraint;
  Box box;
  double rate_unit;
  Coordinates coordinates = Coordinates::Power;
  /// sigma2_i / alpha_i, used by LogSnr.
  std::vector<double> snr_scale;
  std::vector<double> p_max;

  /// Maps a point in search coordinates to transmit powers in W.
  std::vector<double> to_power(std::span<const double> point) const;
  /// Inverse of to_power for coordinate k.
  double from_power(std::size_t k, double p) const;
};

/// Power-sum box reduction in the problem's search coordinates: shrinks
/// each upper edge in place so that sum(p) <= gamma stays reachable.
/// Returns false if no point of [lower, upper] qualifies.
bool reduce_power_sum(const Problem& problem, std::span<const double> lower, std::span<double> upper, double gamma);

Problem build_problem(const InterferenceNetwork& net, const PowerModel& pm,
                      const ProblemSpec& spec);

/// Text format: "n bandwidth", alpha row, sigma2 row, then n beta rows.
void write_network(std::ostream& os, const InterferenceNetwork& net);
InterferenceNetwork read_network(std::istream& is);
void save_network(const std::string& path, const InterferenceNetwork& net);
InterferenceNetwork load_network(const std::string& path);

}  // namespace htee
