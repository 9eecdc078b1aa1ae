#include "htee/scenario.hpp"

#include <fmt/format.h>

#include <cmath>
#include <filesystem>
#include <stdexcept>

namespace htee {

void ScenarioParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(fmt::format("ScenarioParams: {} must be > 0", name));
  };
  positive(area_edge, "area_edge");
  positive(carrier_freq, "carrier_freq");
  positive(bs_height, "bs_height");
  positive(ue_height, "ue_height");
  positive(shadowing_sigma, "shadowing_sigma");
  positive(noise_figure, "noise_figure");
  positive(bandwidth, "bandwidth");
  positive(pa_efficiency, "pa_efficiency");
  positive(p_static, "p_static");
  positive(min_distance, "min_distance");
  if (!std::isfinite(noise_density)) throw std::invalid_argument("ScenarioParams: noise_density must be finite");
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n_cells))));
  if (n_cells == 0 || side * side != n_cells) {
    throw std::invalid_argument("ScenarioParams: n_cells must be a perfect square");
  }
  if (max_attempts == 0) throw std::invalid_argument("ScenarioParams: max_attempts must be > 0");
}

double ScenarioParams::noise_power() const {
  return std::pow(10.0, (noise_density + noise_figure) / 10.0 - 3.0) * bandwidth;
}

PowerModel ScenarioParams::power_model() const {
  return PowerModel{std::vector<double>(n_cells, 1.0 / pa_efficiency), p_static};
}

double pathloss_db(double distance_km, const ScenarioParams& params) {
  const double d = std::max(distance_km, params.min_distance / 1000.0);
  if (!(d > 0.0)) throw std::invalid_argument("pathloss_db: distance must be > 0");
  const double lf = std::log10(params.carrier_freq);
  const double lhb = std::log10(params.bs_height);
  const double mobile_correction = (1.1 * lf - 0.7) * params.ue_height - (1.56 * lf - 0.8);
  return 46.3 + 33.9 * lf - 13.82 * lhb - mobile_correction + (44.9 - 6.55 * lhb) * std::log10(d) +
         params.city_correction;
}

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

Scenario generate(std::uint64_t seed, const ScenarioParams& params) {
  params.validate();
  const std::size_t n = params.n_cells;
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  const double cell = params.area_edge / static_cast<double>(side);

  Deployment dep;
  for (std::size_t row = 0; row < side; ++row) {
    for (std::size_t col = 0; col < side; ++col) {
      dep.bs_positions.push_back({(static_cast<double>(col) + 0.5) * cell, (static_cast<double>(row) + 0.5) * cell});
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> place(0.0, params.area_edge);
  ChannelDraws draws(params.shadowing_sigma);

  std::vector<double> gain(n * n);  // gain[u * n + b]: UE u to BS b
  std::vector<Point2> ues(n);
  std::vector<std::size_t> assoc(n);
  std::vector<bool> taken(n);

  for (std::size_t attempt = 1; attempt <= params.max_attempts; ++attempt) {
    for (auto& ue : ues) ue = {place(rng), place(rng)};
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t b = 0; b < n; ++b) {
        const double dx = ues[u].x - dep.bs_positions[b].x;
        const double dy = ues[u].y - dep.bs_positions[b].y;
        const double loss_db = pathloss_db(std::hypot(dx, dy) / 1000.0, params) + draws.shadowing_db(rng);
        gain[u * n + b] = std::pow(10.0, -loss_db / 10.0) * draws.rayleigh_power(rng);
      }
    }

    std::fill(taken.begin(), taken.end(), false);
    bool bijective = true;
    for (std::size_t u = 0; u < n; ++u) {
      std::size_t best = 0;
      for (std::size_t b = 1; b < n; ++b) {
        if (gain[u * n + b] > gain[u * n + best]) best = b;
      }
      assoc[u] = best;
      if (taken[best]) bijective = false;
      taken[best] = true;
    }
    if (!bijective) continue;

    std::vector<double> alpha(n), beta(n * n, 0.0), sigma2(n, params.noise_power());
    for (std::size_t i = 0; i < n; ++i) {
      alpha[i] = gain[i * n + assoc[i]];
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) beta[i * n + j] = gain[j * n + assoc[i]];
      }
    }
    dep.ue_positions = ues;
    dep.association = assoc;
    dep.attempts = attempt;
    return Scenario{std::move(dep), InterferenceNetwork(std::move(alpha), std::move(beta), std::move(sigma2), params.bandwidth)};
  }
  throw std::runtime_error(fmt::format("generate: no bijective association after {} drops", params.max_attempts));
}

std::vector<std::string> export_networks(std::uint64_t seed, std::size_t count, const std::string& dir,
                                         const ScenarioParams& params) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  paths.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto path = (std::filesystem::path(dir) / fmt::format("net_{}_{}.txt", seed, i)).string();
    save_network(path, generate(stream_seed(seed, i), params).network);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace htee
