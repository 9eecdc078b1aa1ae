#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "htee/harness.hpp"

namespace htee {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw std::invalid_argument(fmt::format("config: '{}' expects a number, got '{}'", key, v));
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument(fmt::format("config: '{}' expects a nonnegative integer, got '{}'", key, v));
  }
  return std::stoull(v);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument(fmt::format("config: '{}' expects true/false, got '{}'", key, v));
}

// "start:step:stop" or a comma separated list.
std::vector<double> parse_range(const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (v.find(':') != std::string::npos) {
    const auto parts = split(v, ':');
    if (parts.size() != 3) throw std::invalid_argument("config: p_dbm range must be start:step:stop");
    const double start = to_double(key, parts[0]);
    const double step = to_double(key, parts[1]);
    const double stop = to_double(key, parts[2]);
    if (!(step > 0.0) || stop < start) throw std::invalid_argument("config: p_dbm range needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + step * static_cast<double>(i));
  } else {
    for (const auto& item : split(v, ',')) out.push_back(to_double(key, item));
  }
  return out;
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.9g}", v);
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& is) {
  SweepConfig cfg;
  auto& sc = cfg.scenario;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  auto real = [](double& field) -> Setter { return [&field](const std::string& k, const std::string& v) { field = to_double(k, v); }; };
  const std::map<std::string, Setter> setters{
      {"p_dbm", [&](const std::string& k, const std::string& v) { cfg.p_dbm = parse_range(k, v); }},
      {"omega", real(cfg.omega)},
      {"realizations", [&](const std::string& k, const std::string& v) { cfg.realizations = to_uint(k, v); }},
      {"master_seed", [&](const std::string& k, const std::string& v) { cfg.master_seed = to_uint(k, v); }},
      {"strategies",
       [&](const std::string&, const std::string& v) {
         cfg.strategies.clear();
         for (const auto& s : split(v, ',')) cfg.strategies.push_back(parse_strategy(s));
       }},
      {"eta", real(cfg.eta)},
      {"eps", real(cfg.eps)},
      {"r_min", real(cfg.r_min)},
      {"node_budget", [&](const std::string& k, const std::string& v) { cfg.node_budget = to_uint(k, v); }},
      {"time_budget", [&](const std::string& k, const std::string& v) { cfg.time_budget = to_double(k, v); }},
      {"threads", [&](const std::string& k, const std::string& v) { cfg.threads = to_uint(k, v); }},
      {"per_instance_ratio", [&](const std::string& k, const std::string& v) { cfg.per_instance_ratio = to_bool(k, v); }},
      {"area_edge", real(sc.area_edge)},
      {"n_cells", [&](const std::string& k, const std::string& v) { sc.n_cells = to_uint(k, v); }},
      {"carrier_freq", real(sc.carrier_freq)},
      {"bs_height", real(sc.bs_height)},
      {"ue_height", real(sc.ue_height)},
      {"shadowing_sigma", real(sc.shadowing_sigma)},
      {"noise_density", real(sc.noise_density)},
      {"noise_figure", real(sc.noise_figure)},
      {"bandwidth", real(sc.bandwidth)},
      {"pa_efficiency", real(sc.pa_efficiency)},
      {"p_static", real(sc.p_static)},
      {"min_distance", real(sc.min_distance)},
      {"city_correction", real(sc.city_correction)},
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument(fmt::format("config line {}: expected 'key = value'", lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw std::invalid_argument(fmt::format("config line {}: unknown key '{}'", lineno, key));
    it->second(key, value);
  }
  cfg.validate();
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config " + path);
  return parse_sweep_config(is);
}

void write_sweep_csv(const SweepResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream os(std::filesystem::path(dir) / name, std::ios::binary);
    if (!os) throw std::runtime_error(fmt::format("cannot write {}/{}", dir, name));
    return os;
  };

  auto tp = open("throughput.csv");
  auto ee = open("gee.csv");
  auto pw = open("power.csv");
  auto st = open("stats.csv");
  tp << "p_dbm,tp_tp,tp_htee,tp_gee,n_valid\n";
  ee << "p_dbm,gee_tp,gee_htee,gee_gee,n_valid\n";
  pw << "p_dbm,prel_tp,prel_htee,prel_gee,pabs_tp,pabs_htee,pabs_gee,n_valid\n";
  st << "p_dbm,nodes_tp,nodes_htee,nodes_gee,n_valid,n_failed\n";

  for (const auto& r : result.records) {
    const auto& t = r[Strategy::TP];
    const auto& h = r[Strategy::HTEE];
    const auto& g = r[Strategy::GEE];
    const std::string p = num(r.p_dbm);
    tp << fmt::format("{},{},{},{},{}\n", p, num(t.throughput), num(h.throughput), num(g.throughput), r.valid);
    ee << fmt::format("{},{},{},{},{}\n", p, num(t.gee), num(h.gee), num(g.gee), r.valid);
    pw << fmt::format("{},{},{},{},{},{},{},{}\n", p, num(t.relative_power), num(h.relative_power), num(g.relative_power),
                      num(t.total_power), num(h.total_power), num(g.total_power), r.valid);
    st << fmt::format("{},{},{},{},{},{}\n", p, num(t.nodes), num(h.nodes), num(g.nodes), r.valid, r.failed);
  }
}

}  // namespace htee
