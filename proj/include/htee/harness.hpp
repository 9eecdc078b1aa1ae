#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "htee/network.hpp"
#include "htee/scenario.hpp"
#include "htee/solution.hpp"

namespace htee {

enum class Strategy { TP, HTEE, GEE };
inline constexpr std::array<Strategy, 3> kAllStrategies{Strategy::TP, Strategy::HTEE, Strategy::GEE};

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& name);

/// W from dBm.
double dbm_to_watt(double dbm);

/// Tolerances shared by the three strategies.
///
/// eta is absolute in solver units: bit/s/Hz for throughput, bit/s/Hz per W
/// for GEE. For power minimization it is applied to powers normalized by the
/// per-user budget, i.e. the power tolerance is eta * max(p_max).
struct InstanceConfig {
  double eta = 0.01;
  double eps = 1e-5;
  double omega = 0.95;
  std::vector<double> r_min;  // bit/s, empty means zero floors
  std::uint64_t node_budget = 5'000'000;
  std::optional<double> time_budget;  // seconds per solve
};

struct InstanceMetrics {
  Strategy strategy = Strategy::TP;
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> point;
  double throughput = 0.0;   // bit/s
  double gee = 0.0;          // bit/J
  double total_power = 0.0;  // W
  double r_star = 0.0;       // bit/s, throughput target reference (HTEE)
  std::uint64_t nodes = 0;
  double wall_time = 0.0;
  std::uint64_t network_hash = 0;

  bool solved() const { return status == SolveStatus::Optimal; }
};

/// Stable fingerprint of a network's parameters.
std::uint64_t network_hash(const InterferenceNetwork& net);

/// Solves one strategy. HTEE runs the throughput maximization first.
InstanceMetrics solve_instance(Strategy strategy, const InterferenceNetwork& net, const PowerModel& pm,
                               const std::vector<double>& p_max, const InstanceConfig& cfg);

/// HTEE given an already solved TP instance: its value is r_star and its
/// point the warm start.
InstanceMetrics solve_htee(const InterferenceNetwork& net, const PowerModel& pm, const std::vector<double>& p_max,
                           const InstanceConfig& cfg, const InstanceMetrics& tp);

struct GridResult {
  std::vector<double> point;
  double value = 0.0;      // bit/s for TPmax, bit/J for GEEmax, W for PminHTEE
  bool feasible = false;
  std::uint64_t evaluations = 0;
};

/// Exhaustive search over the uniform grid of [0, p_max] with
/// points_per_dim points per axis. Test oracle, n <= 3.
GridResult brute_force_grid(const InterferenceNetwork& net, const PowerModel& pm, const ProblemSpec& spec,
                            std::size_t points_per_dim);

struct SweepConfig {
  std::vector<double> p_dbm;
  double omega = 0.95;
  std::size_t realizations = 1;
  std::uint64_t master_seed = 1;
  std::vector<Strategy> strategies{kAllStrategies.begin(), kAllStrategies.end()};
  double eta = 0.01;
  double eps = 1e-5;
  double r_min = 0.0;  // bit/s, per user
  std::uint64_t node_budget = 5'000'000;
  std::optional<double> time_budget;
  std::size_t threads = 0;  // 0: hardware concurrency
  bool per_instance_ratio = false;
  ScenarioParams scenario;

  SweepConfig();
  void validate() const;
  bool has(Strategy s) const;
  InstanceConfig instance_config() const;
};

/// Flat "key = value" text with '#' comments.
SweepConfig parse_sweep_config(std::istream& is);
SweepConfig load_sweep_config(const std::string& path);

struct StrategyAverages {
  double throughput = 0.0;   // Mbit/s
  double gee = 0.0;          // Mbit/J
  double total_power = 0.0;  // W
  double relative_power = 0.0;  // % of the TP strategy
  double nodes = 0.0;
  double wall_time = 0.0;    // s
};

struct SweepRecord {
  double p_dbm = 0.0;
  std::array<StrategyAverages, 3> by_strategy;  // indexed by Strategy
  std::size_t valid = 0;     // realizations where every selected strategy solved
  std::size_t failed = 0;

  const StrategyAverages& operator[](Strategy s) const { return by_strategy[static_cast<std::size_t>(s)]; }
  StrategyAverages& operator[](Strategy s) { return by_strategy[static_cast<std::size_t>(s)]; }
};

/// Per (budget, realization) outcome, strategies indexed by Strategy.
struct SweepInstance {
  std::size_t budget_index = 0;
  std::size_t realization = 0;
  std::array<std::optional<InstanceMetrics>, 3> metrics;
  std::string error;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  std::vector<SweepInstance> instances;  // ordered by (budget, realization)
};

/// Runs every strategy on the same network for every budget and
/// realization, then averages in linear units.
SweepResult run_sweep(const SweepConfig& cfg, std::ostream* log = nullptr);

/// throughput.csv, gee.csv, power.csv and stats.csv in dir.
void write_sweep_csv(const SweepResult& result, const std::string& dir);

/// Renders one SVG line plot per CSV found in in_dir. Returns written paths.
std::vector<std::string> plot_sweep(const std::string& in_dir, const std::string& out_dir);

}  // namespace htee
