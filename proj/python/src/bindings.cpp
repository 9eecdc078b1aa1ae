#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "htee/box.hpp"
#include "htee/harness.hpp"
#include "htee/network.hpp"
#include "htee/scenario.hpp"
#include "htee/sit_min.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Global power allocation for interference networks: TP, GEE and HTEE strategies";

  py::class_<htee::Box>(m, "Box")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("lower"), py::arg("upper"))
      .def_property_readonly("lower", [](const htee::Box& b) { return std::vector<double>(b.lower().begin(), b.lower().end()); })
      .def_property_readonly("upper", [](const htee::Box& b) { return std::vector<double>(b.upper().begin(), b.upper().end()); })
      .def("__repr__", [](const htee::Box& b) {
        std::ostringstream os;
        os << "Box(lower=[";
        for (std::size_t i = 0; i < b.dim(); ++i) os << (i ? ", " : "") << b.lower(i);
        os << "], upper=[";
        for (std::size_t i = 0; i < b.dim(); ++i) os << (i ? ", " : "") << b.upper(i);
        os << "])";
        return os.str();
      });
  m.def("bisect", &htee::bisect, py::arg("box"));
  m.def("reduce_box_powersum", &htee::reduce_box_powersum, py::arg("box"), py::arg("gamma"));

  py::class_<htee::InterferenceNetwork>(m, "InterferenceNetwork")
      .def(py::init<std::vector<double>, std::vector<double>, std::vector<double>, double>(), py::arg("alpha"),
           py::arg("beta"), py::arg("sigma2"), py::arg("bandwidth"),
           "beta is the n*n gain matrix in row-major order with zero diagonal")
      .def_property_readonly("size", &htee::InterferenceNetwork::size)
      .def_property_readonly("bandwidth", &htee::InterferenceNetwork::bandwidth)
      .def_property_readonly("alpha", [](const htee::InterferenceNetwork& n) { return std::vector<double>(n.alpha().begin(), n.alpha().end()); })
      .def_property_readonly("sigma2", [](const htee::InterferenceNetwork& n) { return std::vector<double>(n.sigma2().begin(), n.sigma2().end()); })
      .def_property_readonly("beta", [](const htee::InterferenceNetwork& n) {
        return std::vector<double>(n.beta_row_major().begin(), n.beta_row_major().end());
      })
      .def("to_text", [](const htee::InterferenceNetwork& n) {
        std::ostringstream os;
        htee::write_network(os, n);
        return os.str();
      })
      .def_static("from_text", [](const std::string& text) {
        std::istringstream is(text);
        return htee::read_network(is);
      });

  py::class_<htee::PowerModel>(m, "PowerModel")
      .def(py::init([](std::vector<double> mu, double p_static) { return htee::PowerModel{std::move(mu), p_static}; }),
           py::arg("mu"), py::arg("p_static"))
      .def_readwrite("mu", &htee::PowerModel::mu)
      .def_readwrite("p_static", &htee::PowerModel::p_static);

  m.def("sinr", [](const htee::InterferenceNetwork& n, std::vector<double> p, std::size_t i) { return htee::sinr(n, p, i); });
  m.def("rate", [](const htee::InterferenceNetwork& n, std::vector<double> p, std::size_t i) { return htee::rate(n, p, i); });
  m.def("sum_rate", [](const htee::InterferenceNetwork& n, std::vector<double> p) { return htee::sum_rate(n, p); });
  m.def("gee", [](const htee::InterferenceNetwork& n, const htee::PowerModel& pm, std::vector<double> p) {
    return htee::gee(n, pm, p);
  });

  py::class_<htee::ScenarioParams>(m, "ScenarioParams")
      .def(py::init<>())
      .def_readwrite("area_edge", &htee::ScenarioParams::area_edge)
      .def_readwrite("n_cells", &htee::ScenarioParams::n_cells)
      .def_readwrite("carrier_freq", &htee::ScenarioParams::carrier_freq)
      .def_readwrite("bs_height", &htee::ScenarioParams::bs_height)
      .def_readwrite("ue_height", &htee::ScenarioParams::ue_height)
      .def_readwrite("shadowing_sigma", &htee::ScenarioParams::shadowing_sigma)
      .def_readwrite("bandwidth", &htee::ScenarioParams::bandwidth)
      .def_readwrite("p_static", &htee::ScenarioParams::p_static)
      .def_readwrite("pa_efficiency", &htee::ScenarioParams::pa_efficiency)
      .def("noise_power", &htee::ScenarioParams::noise_power)
      .def("power_model", &htee::ScenarioParams::power_model);

  m.def("pathloss_db", &htee::pathloss_db, py::arg("distance_km"), py::arg("params") = htee::ScenarioParams{});
  m.def("stream_seed", &htee::stream_seed, py::arg("master_seed"), py::arg("index"));
  m.def(
      "generate",
      [](std::uint64_t seed, const htee::ScenarioParams& params) {
        auto s = htee::generate(seed, params);
        py::list ues;
        for (const auto& p : s.deployment.ue_positions) ues.append(py::make_tuple(p.x, p.y));
        py::list bss;
        for (const auto& p : s.deployment.bs_positions) bss.append(py::make_tuple(p.x, p.y));
        py::dict dep;
        dep["ue_positions"] = ues;
        dep["bs_positions"] = bss;
        dep["association"] = s.deployment.association;
        dep["attempts"] = s.deployment.attempts;
        return py::make_tuple(s.network, dep);
      },
      py::arg("seed"), py::arg("params") = htee::ScenarioParams{});

  py::enum_<htee::Strategy>(m, "Strategy")
      .value("TP", htee::Strategy::TP)
      .value("HTEE", htee::Strategy::HTEE)
      .value("GEE", htee::Strategy::GEE);

  py::enum_<htee::SolveStatus>(m, "SolveStatus")
      .value("Optimal", htee::SolveStatus::Optimal)
      .value("Infeasible", htee::SolveStatus::Infeasible)
      .value("BudgetExhausted", htee::SolveStatus::BudgetExhausted);

  py::enum_<htee::ProblemKind>(m, "ProblemKind")
      .value("TPmax", htee::ProblemKind::TPmax)
      .value("GEEmax", htee::ProblemKind::GEEmax)
      .value("PminHTEE", htee::ProblemKind::PminHTEE);

  py::class_<htee::InstanceConfig>(m, "InstanceConfig")
      .def(py::init<>())
      .def_readwrite("eta", &htee::InstanceConfig::eta)
      .def_readwrite("eps", &htee::InstanceConfig::eps)
      .def_readwrite("omega", &htee::InstanceConfig::omega)
      .def_readwrite("r_min", &htee::InstanceConfig::r_min)
      .def_readwrite("node_budget", &htee::InstanceConfig::node_budget)
      .def_readwrite("time_budget", &htee::InstanceConfig::time_budget);

  py::class_<htee::InstanceMetrics>(m, "InstanceMetrics")
      .def_readonly("strategy", &htee::InstanceMetrics::strategy)
      .def_readonly("status", &htee::InstanceMetrics::status)
      .def_readonly("point", &htee::InstanceMetrics::point)
      .def_readonly("throughput", &htee::InstanceMetrics::throughput)
      .def_readonly("gee", &htee::InstanceMetrics::gee)
      .def_readonly("total_power", &htee::InstanceMetrics::total_power)
      .def_readonly("r_star", &htee::InstanceMetrics::r_star)
      .def_readonly("nodes", &htee::InstanceMetrics::nodes)
      .def_readonly("wall_time", &htee::InstanceMetrics::wall_time)
      .def_property_readonly("solved", &htee::InstanceMetrics::solved);

  m.def("dbm_to_watt", &htee::dbm_to_watt);
  m.def("solve_instance", &htee::solve_instance, py::arg("strategy"), py::arg("net"), py::arg("power_model"),
        py::arg("p_max"), py::arg("config") = htee::InstanceConfig{},
        py::call_guard<py::gil_scoped_release>());

  py::class_<htee::GridResult>(m, "GridResult")
      .def_readonly("point", &htee::GridResult::point)
      .def_readonly("value", &htee::GridResult::value)
      .def_readonly("feasible", &htee::GridResult::feasible);

  m.def(
      "brute_force_grid",
      [](const htee::InterferenceNetwork& net, const htee::PowerModel& pm, htee::ProblemKind kind,
         std::vector<double> p_max, std::size_t points, double omega, std::optional<double> r_star) {
        htee::ProblemSpec spec;
        spec.kind = kind;
        spec.p_max = std::move(p_max);
        spec.omega = omega;
        spec.r_star = r_star;
        return htee::brute_force_grid(net, pm, spec, points);
      },
      py::arg("net"), py::arg("power_model"), py::arg("kind"), py::arg("p_max"), py::arg("points_per_dim") = 200,
      py::arg("omega") = 1.0, py::arg("r_star") = py::none());

  m.def(
      "run_sweep_config",
      [](const std::string& config_text, const std::string& out_dir) {
        std::istringstream is(config_text);
        const auto cfg = htee::parse_sweep_config(is);
        htee::SweepResult result;
        {
          py::gil_scoped_release release;
          result = htee::run_sweep(cfg);
        }
        htee::write_sweep_csv(result, out_dir);
        return result.records.size();
      },
      py::arg("config_text"), py::arg("out_dir"), "Runs a sweep from config text and writes the CSV files");
}
