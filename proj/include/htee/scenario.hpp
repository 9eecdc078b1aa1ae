#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "htee/network.hpp"

namespace htee {

/// Uplink multi-cell deployment parameters. Defaults describe a 1 km square
/// split into four cells, COST231-Hata urban path loss at 1.9 GHz.
struct ScenarioParams {
  double area_edge = 1000.0;        // m
  std::size_t n_cells = 4;          // perfect square
  double carrier_freq = 1900.0;     // MHz
  double bs_height = 30.0;          // m
  double ue_height = 1.5;           // m
  double shadowing_sigma = 8.0;     // dB
  double noise_density = -174.0;    // dBm/Hz
  double noise_figure = 3.0;        // dB
  double bandwidth = 180e3;         // Hz
  double pa_efficiency = 0.25;
  double p_static = 0.4;            // W, total static circuit power of all UEs
  double min_distance = 10.0;       // m, path loss clamp
  double city_correction = 0.0;     // dB, COST231 C term (0: medium city)
  std::size_t max_attempts = 100000;

  void validate() const;
  /// sigma^2 = N0 * F * B in W.
  double noise_power() const;
  PowerModel power_model() const;
};

struct Point2 {
  double x;
  double y;
};

struct Deployment {
  std::vector<Point2> bs_positions;
  std::vector<Point2> ue_positions;
  std::vector<std::size_t> association;  // UE index -> BS index
  std::size_t attempts = 0;              // drops drawn, including rejected ones
};

struct Scenario {
  Deployment deployment;
  InterferenceNetwork network;
};

/// Per-link random channel terms, in the order generate() draws them.
class ChannelDraws {
 public:
  explicit ChannelDraws(double shadowing_sigma_db) : shadow_(0.0, shadowing_sigma_db) {}
  /// Log-normal shadowing in dB.
  double shadowing_db(std::mt19937_64& rng) { return shadow_(rng); }
  /// Rayleigh fading power |h|^2, unit mean.
  double rayleigh_power(std::mt19937_64& rng) { return fading_(rng); }

 private:
  std::normal_distribution<double> shadow_;
  std::exponential_distribution<double> fading_{1.0};
};

/// COST231-Hata urban path loss in dB for a distance in km.
double pathloss_db(double distance_km, const ScenarioParams& params);

/// Derives the seed of stream `index` from a master seed.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index);

/// Draws drops until every UE picks a distinct BS (best composite channel).
/// Throws std::runtime_error after params.max_attempts rejected drops.
Scenario generate(std::uint64_t seed, const ScenarioParams& params = {});

/// Writes net_<seed>_<index>.txt for index in [0, count); realization
/// `index` is generate(stream_seed(seed, index)). Returns the file paths.
std::vector<std::string> export_networks(std::uint64_t seed, std::size_t count, const std::string& dir,
                                         const ScenarioParams& params = {});

}  // namespace htee
