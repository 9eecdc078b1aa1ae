#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>

#include "htee/harness.hpp"
#include "htee/network.hpp"
#include "htee/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical power allocation: TP, GEE and HTEE strategies in interference networks"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Draw random multi-cell networks and write them as text files");
  std::uint64_t seed = 1;
  std::size_t count = 1;
  std::string gen_out = ".";
  gen->add_option("--seed", seed, "Master seed")->required();
  gen->add_option("--count", count, "Number of realizations")->required()->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "Output directory")->required();

  auto* solve = app.add_subcommand("solve", "Solve one network with one strategy");
  std::string net_path;
  std::string strategy_name;
  double pmax_dbm = 23.0;
  htee::InstanceConfig ic;
  solve->add_option("--net", net_path, "Network file")->required()->check(CLI::ExistingFile);
  solve->add_option("--strategy", strategy_name, "tp, gee or htee")
      ->required()
      ->check(CLI::IsMember({"tp", "gee", "htee"}, CLI::ignore_case));
  solve->add_option("--pmax-dbm", pmax_dbm, "Per-user power budget in dBm")->required();
  solve->add_option("--omega", ic.omega, "Worsening factor for htee")->check(CLI::Range(0.0, 1.0));
  solve->add_option("--eta", ic.eta, "Absolute optimality tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--eps", ic.eps, "Essential feasibility margin")->check(CLI::PositiveNumber);
  double pc = htee::ScenarioParams{}.p_static;
  double pa = htee::ScenarioParams{}.pa_efficiency;
  solve->add_option("--p-static", pc, "Total static power in W")->check(CLI::PositiveNumber);
  solve->add_option("--pa-efficiency", pa, "Power amplifier efficiency")->check(CLI::Range(1e-9, 1.0));

  auto* sweep = app.add_subcommand("sweep", "Run the power-budget sweep and write CSV files");
  std::string config_path;
  std::string sweep_out;
  bool quiet = false;
  sweep->add_option("--config", config_path, "key = value config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_out, "Output directory")->required();
  sweep->add_flag("--quiet", quiet, "Suppress progress output");

  auto* plot = app.add_subcommand("plot", "Render SVG plots from sweep CSV files");
  std::string plot_in;
  std::string plot_out;
  plot->add_option("--in", plot_in, "Directory with sweep CSV files")->required()->check(CLI::ExistingDirectory);
  plot->add_option("--out", plot_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      for (const auto& path : htee::export_networks(seed, count, gen_out)) std::cout << path << '\n';
    } else if (*solve) {
      const auto net = htee::load_network(net_path);
      const htee::PowerModel pm{std::vector<double>(net.size(), 1.0 / pa), pc};
      const std::vector<double> p_max(net.size(), htee::dbm_to_watt(pmax_dbm));
      const auto strategy = htee::parse_strategy(strategy_name);
      const auto m = htee::solve_instance(strategy, net, pm, p_max, ic);
      std::cout << fmt::format("strategy {}\nstatus {}\n", htee::to_string(strategy), htee::to_string(m.status));
      std::cout << "power_w";
      for (double p : m.point) std::cout << fmt::format(" {:.9g}", p);
      std::cout << '\n';
      std::cout << fmt::format("throughput_bps {:.9g}\ngee_bpj {:.9g}\ntotal_power_w {:.9g}\n", m.throughput, m.gee,
                               m.total_power);
      if (strategy == htee::Strategy::HTEE) std::cout << fmt::format("r_star_bps {:.9g}\n", m.r_star);
      std::cout << fmt::format("nodes {}\nwall_time_s {:.6f}\n", m.nodes, m.wall_time);
      return m.solved() ? 0 : 2;
    } else if (*sweep) {
      const auto cfg = htee::load_sweep_config(config_path);
      const auto result = htee::run_sweep(cfg, quiet ? nullptr : &std::cerr);
      htee::write_sweep_csv(result, sweep_out);
      std::size_t failed = 0;
      for (const auto& r : result.records) failed += r.failed;
      if (!quiet) std::cerr << fmt::format("wrote CSV files to {} ({} failed instances)\n", sweep_out, failed);
    } else if (*plot) {
      for (const auto& path : htee::plot_sweep(plot_in, plot_out)) std::cout << path << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
