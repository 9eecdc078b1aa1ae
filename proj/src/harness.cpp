#include "htee/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <limits>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "htee/bb_max.hpp"
#include "htee/sit_min.hpp"

namespace htee {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::TP: return "tp";
    case Strategy::HTEE: return "htee";
    case Strategy::GEE: return "gee";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "tp") return Strategy::TP;
  if (lower == "htee") return Strategy::HTEE;
  if (lower == "gee") return Strategy::GEE;
  throw std::invalid_argument("unknown strategy '" + name + "' (expected tp, htee or gee)");
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

std::uint64_t network_hash(const InterferenceNetwork& net) {
  // FNV-1a over the raw parameter bytes.
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof v);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<double>(net.size()));
  mix(net.bandwidth());
  for (double v : net.alpha()) mix(v);
  for (double v : net.sigma2()) mix(v);
  for (double v : net.beta_row_major()) mix(v);
  return h;
}

namespace {

void fill_metrics(InstanceMetrics& m, const InterferenceNetwork& net, const PowerModel& pm, const Solution& sol) {
  m.status = sol.status;
  m.nodes = sol.nodes;
  m.wall_time = sol.wall_time;
  m.network_hash = network_hash(net);
  if (sol.has_point()) {
    m.point = sol.point;
    m.throughput = sum_rate(net, sol.point);
    m.gee = gee(net, pm, sol.point);
    m.total_power = sum_power(sol.point);
  }
}

InstanceMetrics solve_max(Strategy strategy, ProblemKind kind, const InterferenceNetwork& net, const PowerModel& pm,
                          const std::vector<double>& p_max, const InstanceConfig& cfg) {
  ProblemSpec spec;
  spec.kind = kind;
  spec.r_min = cfg.r_min;
  spec.p_max = p_max;
  spec.coordinates = Coordinates::LogSnr;
  spec.refine_bounds = true;
  const Problem problem = build_problem(net, pm, spec);

  SolverConfig sc;
  sc.eta = cfg.eta;
  sc.node_budget = cfg.node_budget;
  sc.time_budget = cfg.time_budget;
  Solution sol = maximize(problem.objective, problem.constraint, problem.box, sc);
  if (sol.has_point()) sol.point = problem.to_power(sol.point);

  InstanceMetrics m;
  m.strategy = strategy;
  fill_metrics(m, net, pm, sol);
  if (kind == ProblemKind::TPmax && sol.has_point()) m.r_star = sol.value * problem.rate_unit;
  return m;
}

}  // namespace

InstanceMetrics solve_htee(const InterferenceNetwork& net, const PowerModel& pm, const std::vector<double>& p_max,
                           const InstanceConfig& cfg, const InstanceMetrics& tp) {
  if (tp.strategy != Strategy::TP || !tp.solved()) {
    throw std::invalid_argument("solve_htee: requires a solved TP instance");
  }
  ProblemSpec spec;
  spec.kind = ProblemKind::PminHTEE;
  spec.r_min = cfg.r_min;
  spec.omega = cfg.omega;
  spec.r_star = tp.r_star;
  spec.p_max = p_max;
  spec.refine_bounds = true;
  spec.coordinates = Coordinates::LogSnr;
  const Problem problem = build_problem(net, pm, spec);

  SitConfig sc;
  sc.eps = cfg.eps;
  sc.eta = cfg.eta * *std::max_element(p_max.begin(), p_max.end());
  sc.node_budget = cfg.node_budget;
  sc.time_budget = cfg.time_budget;
  SitOptions opts;
  opts.warm_start.emplace(tp.point.size());
  for (std::size_t k = 0; k < tp.point.size(); ++k) (*opts.warm_start)[k] = problem.from_power(k, tp.point[k]);

  const auto total_power = [&problem](std::span<const double> z) { return problem.objective.diagonal(z); };
  const auto reducer = [&problem](std::span<const double> lo, std::span<double> hi, double gamma) {
    return reduce_power_sum(problem, lo, hi, gamma);
  };
  Solution sol = minimize_sit(total_power, problem.constraint, problem.box, reducer, sc, opts);
  if (sol.has_point()) sol.point = problem.to_power(sol.point);

  InstanceMetrics m;
  m.strategy = Strategy::HTEE;
  fill_metrics(m, net, pm, sol);
  m.r_star = tp.r_star;
  return m;
}

InstanceMetrics solve_instance(Strategy strategy, const InterferenceNetwork& net, const PowerModel& pm,
                               const std::vector<double>& p_max, const InstanceConfig& cfg) {
  switch (strategy) {
    case Strategy::TP: return solve_max(Strategy::TP, ProblemKind::TPmax, net, pm, p_max, cfg);
    case Strategy::GEE: return solve_max(Strategy::GEE, ProblemKind::GEEmax, net, pm, p_max, cfg);
    case Strategy::HTEE: {
      const InstanceMetrics tp = solve_max(Strategy::TP, ProblemKind::TPmax, net, pm, p_max, cfg);
      if (!tp.solved()) {
        InstanceMetrics m;
        m.strategy = Strategy::HTEE;
        m.status = tp.status;
        m.nodes = tp.nodes;
        m.wall_time = tp.wall_time;
        m.network_hash = tp.network_hash;
        return m;
      }
      InstanceMetrics m = solve_htee(net, pm, p_max, cfg, tp);
      m.wall_time += tp.wall_time;
      return m;
    }
  }
  throw std::logic_error("solve_instance: unknown strategy");
}

GridResult brute_force_grid(const InterferenceNetwork& net, const PowerModel& pm, const ProblemSpec& spec,
                            std::size_t points_per_dim) {
  const std::size_t n = net.size();
  if (n > 3) throw std::invalid_argument("brute_force_grid: dimension too large (n <= 3)");
  if (points_per_dim < 100) throw std::invalid_argument("brute_force_grid: need at least 100 points per dimension");
  spec.validate(n);
  if (spec.kind == ProblemKind::GEEmax) pm.validate(n);

  std::vector<double> floors = spec.r_min.empty() ? std::vector<double>(n, 0.0) : spec.r_min;
  const double target = spec.kind == ProblemKind::PminHTEE ? spec.omega * *spec.r_star : 0.0;
  const bool minimize = spec.kind == ProblemKind::PminHTEE;

  GridResult out;
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> p(n, 0.0);
  std::vector<double> rates(n);
  const double steps = static_cast<double>(points_per_dim - 1);

  for (;;) {
    for (std::size_t i = 0; i < n; ++i) p[i] = spec.p_max[i] * static_cast<double>(idx[i]) / steps;
    ++out.evaluations;

    bool ok = true;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      rates[i] = rate(net, p, i);
      total += rates[i];
      if (rates[i] < floors[i]) ok = false;
    }
    if (ok && minimize && total < target) ok = false;
    if (ok) {
      double value = 0.0;
      switch (spec.kind) {
        case ProblemKind::TPmax: value = total; break;
        case ProblemKind::GEEmax: value = total / pm.consumed(p); break;
        case ProblemKind::PminHTEE: value = sum_power(p); break;
      }
      const bool better = !out.feasible || (minimize ? value < out.value : value > out.value);
      if (better) {
        out.feasible = true;
        out.value = value;
        out.point = p;
      }
    }

    std::size_t d = 0;
    while (d < n && ++idx[d] == points_per_dim) idx[d++] = 0;
    if (d == n) break;
  }
  return out;
}

SweepConfig::SweepConfig() {
  for (int dbm = -20; dbm <= 30; dbm += 2) p_dbm.push_back(dbm);
}

void SweepConfig::validate() const {
  if (p_dbm.empty()) throw std::invalid_argument("SweepConfig: empty power range");
  for (double v : p_dbm) {
    if (!std::isfinite(v)) throw std::invalid_argument("SweepConfig: non-finite power budget");
  }
  if (realizations == 0) throw std::invalid_argument("SweepConfig: realizations must be >= 1");
  if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("SweepConfig: omega must lie in [0, 1]");
  if (!(eta > 0.0)) throw std::invalid_argument("SweepConfig: eta must be > 0");
  if (!(eps > 0.0)) throw std::invalid_argument("SweepConfig: eps must be > 0");
  if (!(r_min >= 0.0)) throw std::invalid_argument("SweepConfig: r_min must be >= 0");
  if (strategies.empty()) throw std::invalid_argument("SweepConfig: no strategies selected");
  if (node_budget == 0) throw std::invalid_argument("SweepConfig: node_budget must be > 0");
  scenario.validate();
}

bool SweepConfig::has(Strategy s) const {
  return std::find(strategies.begin(), strategies.end(), s) != strategies.end();
}

InstanceConfig SweepConfig::instance_config() const {
  InstanceConfig ic;
  ic.eta = eta;
  ic.eps = eps;
  ic.omega = omega;
  if (r_min > 0.0) ic.r_min.assign(scenario.n_cells, r_min);
  ic.node_budget = node_budget;
  ic.time_budget = time_budget;
  return ic;
}

namespace {

// TP is the reference for relative power and the HTEE target, so it is
// solved whenever anything is.
SweepInstance solve_work_item(const SweepConfig& cfg, const InstanceConfig& ic, const InterferenceNetwork& net,
                              const PowerModel& pm, std::size_t b, std::size_t r) {
  SweepInstance inst;
  inst.budget_index = b;
  inst.realization = r;
  const std::vector<double> p_max(net.size(), dbm_to_watt(cfg.p_dbm[b]));
  try {
    InstanceMetrics tp = solve_instance(Strategy::TP, net, pm, p_max, ic);
    if (cfg.has(Strategy::HTEE)) {
      if (tp.solved()) {
        inst.metrics[static_cast<std::size_t>(Strategy::HTEE)] = solve_htee(net, pm, p_max, ic, tp);
      } else {
        InstanceMetrics failed;
        failed.strategy = Strategy::HTEE;
        failed.status = tp.status;
        failed.network_hash = tp.network_hash;
        inst.metrics[static_cast<std::size_t>(Strategy::HTEE)] = failed;
      }
    }
    if (cfg.has(Strategy::GEE)) {
      inst.metrics[static_cast<std::size_t>(Strategy::GEE)] = solve_instance(Strategy::GEE, net, pm, p_max, ic);
    }
    inst.metrics[static_cast<std::size_t>(Strategy::TP)] = std::move(tp);
  } catch (const std::exception& e) {
    inst.error = e.what();
  }
  return inst;
}

SweepRecord average(const SweepConfig& cfg, std::size_t b, const std::vector<SweepInstance>& instances) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  SweepRecord rec;
  rec.p_dbm = cfg.p_dbm[b];

  std::array<StrategyAverages, 3> sum{};
  std::array<double, 3> ratio_sum{};
  for (const auto& inst : instances) {
    if (inst.budget_index != b) continue;
    bool ok = inst.error.empty();
    for (std::size_t s = 0; s < 3 && ok; ++s) {
      if (inst.metrics[s] && !inst.metrics[s]->solved()) ok = false;
    }
    if (!ok) {
      ++rec.failed;
      continue;
    }
    ++rec.valid;
    const double p_tp = inst.metrics[0]->total_power;
    for (std::size_t s = 0; s < 3; ++s) {
      if (!inst.metrics[s]) continue;
      const auto& m = *inst.metrics[s];
      sum[s].throughput += m.throughput / 1e6;
      sum[s].gee += m.gee / 1e6;
      sum[s].total_power += m.total_power;
      sum[s].nodes += static_cast<double>(m.nodes);
      sum[s].wall_time += m.wall_time;
      ratio_sum[s] += p_tp > 0.0 ? 100.0 * m.total_power / p_tp : 100.0;
    }
  }

  for (std::size_t s = 0; s < 3; ++s) {
    auto& avg = rec.by_strategy[s];
    const bool present = s == 0 || cfg.has(static_cast<Strategy>(s));
    if (rec.valid == 0 || !present) {
      avg = StrategyAverages{nan, nan, nan, nan, nan, nan};
      continue;
    }
    const double k = static_cast<double>(rec.valid);
    avg.throughput = sum[s].throughput / k;
    avg.gee = sum[s].gee / k;
    avg.total_power = sum[s].total_power / k;
    avg.nodes = sum[s].nodes / k;
    avg.wall_time = sum[s].wall_time / k;
    if (cfg.per_instance_ratio) {
      avg.relative_power = ratio_sum[s] / k;
    } else {
      avg.relative_power = sum[0].total_power > 0.0 ? 100.0 * sum[s].total_power / sum[0].total_power : 100.0;
    }
  }
  return rec;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg, std::ostream* log) {
  cfg.validate();
  const PowerModel pm = cfg.scenario.power_model();
  const InstanceConfig ic = cfg.instance_config();

  std::vector<InterferenceNetwork> networks;
  networks.reserve(cfg.realizations);
  for (std::size_t r = 0; r < cfg.realizations; ++r) {
    networks.push_back(generate(stream_seed(cfg.master_seed, r), cfg.scenario).network);
  }

  const std::size_t n_budgets = cfg.p_dbm.size();
  const std::size_t n_items = n_budgets * cfg.realizations;
  SweepResult result;
  result.instances.resize(n_items);

  std::size_t threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n_items);

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t item = next++; item < n_items; item = next++) {
      const std::size_t b = item / cfg.realizations;
      const std::size_t r = item % cfg.realizations;
      result.instances[item] = solve_work_item(cfg, ic, networks[r], pm, b, r);
      const std::size_t finished = ++done;
      if (log) {
        std::lock_guard lock(log_mutex);
        if (!result.instances[item].error.empty()) {
          *log << fmt::format("[sweep] P={} dBm realization {}: {}\n", cfg.p_dbm[b], r, result.instances[item].error);
        }
        if (finished % 50 == 0 || finished == n_items) {
          *log << fmt::format("[sweep] {}/{} instances\n", finished, n_items);
        }
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  result.records.reserve(n_budgets);
  for (std::size_t b = 0; b < n_budgets; ++b) result.records.push_back(average(cfg, b, result.instances));
  return result;
}

}  // namespace htee
