#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "htee/harness.hpp"
#include "support.hpp"

using namespace htee;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

SweepConfig small_sweep() {
  std::istringstream is(R"(
# two budgets, a handful of drops
p_dbm = -10:10:0
realizations = 3
master_seed = 17
threads = 2
)");
  return parse_sweep_config(is);
}

}  // namespace

TEST_CASE("dBm conversion") {
  CHECK(dbm_to_watt(30) == doctest::Approx(1.0));
  CHECK(dbm_to_watt(0) == doctest::Approx(1e-3));
  CHECK(dbm_to_watt(23) == doctest::Approx(0.19952623149688797));
}

TEST_CASE("strategy names") {
  for (auto s : kAllStrategies) CHECK(parse_strategy(to_string(s)) == s);
  CHECK_THROWS_AS(parse_strategy("max"), std::invalid_argument);
}

TEST_CASE("config parsing") {
  std::istringstream is(R"(
p_dbm = -20:2:30   # dBm
omega = 0.9
realizations = 12
master_seed = 2020
strategies = tp, htee
eta = 0.001
node_budget = 1000
time_budget = 2.5
per_instance_ratio = true
shadowing_sigma = 6
)");
  const auto cfg = parse_sweep_config(is);
  REQUIRE(cfg.p_dbm.size() == 26);
  CHECK(cfg.p_dbm.front() == -20);
  CHECK(cfg.p_dbm.back() == 30);
  CHECK(cfg.omega == 0.9);
  CHECK(cfg.realizations == 12);
  CHECK(cfg.master_seed == 2020);
  CHECK(cfg.strategies == std::vector<Strategy>{Strategy::TP, Strategy::HTEE});
  CHECK(cfg.eta == 0.001);
  CHECK(cfg.node_budget == 1000);
  CHECK(cfg.time_budget == 2.5);
  CHECK(cfg.per_instance_ratio);
  CHECK(cfg.scenario.shadowing_sigma == 6);

  for (const char* bad : {"omega 0.9", "colour = red", "realizations = -1", "omega = 2", "p_dbm = 5:0:10",
                          "eta = abc", "per_instance_ratio = maybe", "realizations = 0"}) {
    std::istringstream b(bad);
    CHECK_THROWS_AS(parse_sweep_config(b), std::invalid_argument);
  }
  CHECK_THROWS(load_sweep_config("/nonexistent/config.txt"));
}

TEST_CASE("grid oracle examples and limits") {
  ProblemSpec spec;
  spec.p_max = {3};
  const auto one = brute_force_grid(test::single_link(), {}, spec, 100);
  CHECK(one.point[0] == 3.0);
  CHECK(one.value == doctest::Approx(2.0));

  spec.p_max = {10, 10};
  const auto two = brute_force_grid(test::symmetric_pair(), {}, spec, 500);
  CHECK(two.value == doctest::Approx(3.4594316186372973).epsilon(1e-12));
  CHECK(std::max(two.point[0], two.point[1]) == 10.0);
  CHECK(std::min(two.point[0], two.point[1]) == 0.0);
  const auto fine = brute_force_grid(test::symmetric_pair(), {}, spec, 1000);
  CHECK(fine.value == doctest::Approx(two.value).epsilon(1e-12));

  spec.kind = ProblemKind::PminHTEE;
  spec.omega = 0;
  spec.r_star = 3.0;
  const auto origin = brute_force_grid(test::symmetric_pair(), {}, spec, 100);
  CHECK(origin.point == std::vector<double>{0, 0});

  spec = {};
  spec.p_max = {1, 1, 1, 1};
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(brute_force_grid(test::random_network(rng, 4), {}, spec, 100), std::invalid_argument);
  spec.p_max = {1, 1};
  CHECK_THROWS_AS(brute_force_grid(test::symmetric_pair(), {}, spec, 50), std::invalid_argument);
}

TEST_CASE("strategies on generated networks respect their orderings") {
  const ScenarioParams sp;
  InstanceConfig ic;
  for (std::uint64_t r = 0; r < 10; ++r) {
    const auto net = generate(stream_seed(5, r), sp).network;
    const std::vector<double> pmax(4, dbm_to_watt(10));
    const auto tp = solve_instance(Strategy::TP, net, sp.power_model(), pmax, ic);
    REQUIRE(tp.solved());
    const auto h = solve_htee(net, sp.power_model(), pmax, ic, tp);
    const auto g = solve_instance(Strategy::GEE, net, sp.power_model(), pmax, ic);
    REQUIRE(h.solved());
    REQUIRE(g.solved());
    const double eta_rate = ic.eta * net.bandwidth();
    CHECK(tp.network_hash == h.network_hash);
    CHECK(tp.network_hash == g.network_hash);
    CHECK(h.throughput <= tp.throughput + eta_rate);
    CHECK(h.throughput >= ic.omega * tp.r_star - eta_rate);
    CHECK(h.total_power <= tp.total_power + ic.eta * pmax[0]);
    CHECK(g.gee >= h.gee * (1 - 1e-3));
    CHECK(g.gee >= tp.gee * (1 - 1e-3));
    CHECK(tp.r_star == doctest::Approx(tp.throughput).epsilon(1e-12));
  }
}

TEST_CASE("HTEE with omega 1 keeps the throughput-optimal power") {
  // Single link: the TP optimum is unique (full power).
  const auto net = test::single_link(2.0, 1.0, 1.0);
  InstanceConfig ic;
  ic.omega = 1.0;
  const std::vector<double> pmax{5.0};
  const auto tp = solve_instance(Strategy::TP, net, PowerModel{{1.0}, 1.0}, pmax, ic);
  const auto h = solve_htee(net, PowerModel{{1.0}, 1.0}, pmax, ic, tp);
  REQUIRE(h.solved());
  CHECK(std::abs(h.total_power - tp.total_power) <= ic.eta * pmax[0]);
  CHECK_THROWS_AS(solve_htee(net, PowerModel{{1.0}, 1.0}, pmax, ic, h), std::invalid_argument);
}

TEST_CASE("sweep CSV output is byte-reproducible") {
  namespace fs = std::filesystem;
  const auto cfg = small_sweep();
  const fs::path base = fs::temp_directory_path() / "htee_sweep_repro";
  fs::remove_all(base);
  const auto first = run_sweep(cfg);
  write_sweep_csv(first, (base / "a").string());
  auto single = cfg;
  single.threads = 1;
  write_sweep_csv(run_sweep(single), (base / "b").string());
  for (const char* name : {"throughput.csv", "gee.csv", "power.csv", "stats.csv"}) {
    const auto a = slurp(base / "a" / name);
    CHECK(!a.empty());
    CHECK(a == slurp(base / "b" / name));
  }
  CHECK(slurp(base / "a" / "throughput.csv").rfind("p_dbm,tp_tp,tp_htee,tp_gee", 0) == 0);

  REQUIRE(first.records.size() == 2);
  REQUIRE(first.instances.size() == 6);
  for (std::size_t k = 0; k < first.instances.size(); ++k) {
    CHECK(first.instances[k].budget_index == k / 3);
    CHECK(first.instances[k].realization == k % 3);
    // Same network for every strategy of a work item.
    const auto& m = first.instances[k].metrics;
    CHECK(m[0]->network_hash == m[1]->network_hash);
    CHECK(m[0]->network_hash == m[2]->network_hash);
  }
  for (const auto& rec : first.records) {
    CHECK(rec.valid + rec.failed == 3);
    CHECK(rec[Strategy::TP].relative_power == doctest::Approx(100.0));
  }

  const auto svgs = plot_sweep((base / "a").string(), (base / "plots").string());
  CHECK(svgs.size() == 3);
  fs::remove_all(base);
}
