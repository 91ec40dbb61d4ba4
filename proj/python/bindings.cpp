#include "dtc/circuit.hpp"
#include "dtc/error.hpp"
#include "dtc/hardware.hpp"
#include "dtc/optim.hpp"
#include "dtc/pipeline.hpp"
#include "dtc/render.hpp"
#include "dtc/schedule.hpp"
#include "dtc/validate.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace py = pybind11;

namespace {

dtc::HardwareConfig config_from(const std::string& text) {
  return text.empty() ? dtc::HardwareConfig{} : dtc::load_config_text(text);
}

using GateTuple = std::tuple<std::string, int, int, std::optional<double>>;

std::vector<GateTuple> gate_tuples(const dtc::Circuit& c) {
  std::vector<GateTuple> out;
  out.reserve(c.gates.size());
  for (const auto& g : c.gates) {
    out.emplace_back(std::string(dtc::gate_name(g.kind)), g.q0, g.q1, g.angle);
  }
  return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the dtcompile neutral-atom compiler";

  auto base = py::register_exception<dtc::Error>(m, "DtcError", PyExc_RuntimeError);
  py::register_exception<dtc::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<dtc::ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<dtc::GeometryError>(m, "GeometryError", base.ptr());
  py::register_exception<dtc::InfeasibleError>(m, "InfeasibleError", base.ptr());
  py::register_exception<dtc::RoutingError>(m, "RoutingError", base.ptr());

  py::class_<dtc::Circuit>(m, "Circuit")
      .def_readonly("num_qubits", &dtc::Circuit::num_qubits)
      .def_property_readonly("gates", &gate_tuples,
                             "Gates as (name, q0, q1, angle); q1 is -1 for one-qubit gates")
      .def("two_qubit_count", &dtc::Circuit::two_qubit_count)
      .def("to_text", &dtc::format_circuit)
      .def("__len__", [](const dtc::Circuit& c) { return c.gates.size(); })
      .def("__eq__", [](const dtc::Circuit& a, const dtc::Circuit& b) { return a == b; })
      .def("__repr__", [](const dtc::Circuit& c) {
        return "<Circuit qubits=" + std::to_string(c.num_qubits) +
               " gates=" + std::to_string(c.gates.size()) + ">";
      });

  m.def("parse_circuit", &dtc::parse_circuit, py::arg("text"));
  m.def(
      "gen_benchmark",
      [](const std::string& family, int n, std::uint64_t seed) {
        return dtc::gen_benchmark(family, n, seed);
      },
      py::arg("family"), py::arg("n"), py::arg("seed") = 0);
  m.def(
      "asap_stages",
      [](const dtc::Circuit& c) {
        std::vector<std::vector<std::size_t>> out;
        for (const auto& st : dtc::asap_schedule(c)) {
          out.push_back(st.gates);
        }
        return out;
      },
      py::arg("circuit"), "Gate indices of every ASAP layer");

  m.def("default_config", [] { return dtc::format_config(dtc::HardwareConfig{}); });
  m.def(
      "remote_cz_duration",
      [](int hops, const std::string& config) {
        return dtc::remote_cz_duration(hops, config_from(config).timing);
      },
      py::arg("hops"), py::arg("config") = "");
  m.def(
      "aod_move_duration",
      [](double distance_um, const std::string& config) {
        return dtc::aod_move_duration(distance_um, config_from(config).timing);
      },
      py::arg("distance_um"), py::arg("config") = "");

  m.def(
      "compile",
      [](const dtc::Circuit& c, const std::string& mode, const std::string& config) {
        const auto hw = config_from(config);
        const auto m = dtc::parse_mode(mode);
        py::gil_scoped_release release;
        const auto r = dtc::compile(c, hw, m);
        return std::make_pair(dtc::schedule_to_json(r.schedule), dtc::report_to_json(r.report));
      },
      py::arg("circuit"), py::arg("mode") = "dynamic", py::arg("config") = "",
      "Returns (schedule_json, report_json)");
  m.def(
      "validate",
      [](const std::string& schedule_json) {
        const auto s = dtc::schedule_from_json(schedule_json);
        std::vector<std::tuple<int, std::string, std::string>> out;
        for (const auto& d : dtc::validate_schedule(s)) {
          out.emplace_back(d.instruction, d.category, d.message);
        }
        return out;
      },
      py::arg("schedule_json"), "Diagnostics as (instruction, category, message)");
  m.def(
      "fidelity",
      [](const std::string& schedule_json) {
        return dtc::fidelity_to_json(dtc::fidelity_report(dtc::schedule_from_json(schedule_json)));
      },
      py::arg("schedule_json"));
  m.def(
      "render_svg",
      [](const std::string& schedule_json, int stage) {
        dtc::RenderOptions opt;
        opt.stage = stage;
        return dtc::render_svg(dtc::schedule_from_json(schedule_json), opt);
      },
      py::arg("schedule_json"), py::arg("stage") = -1);

  m.def(
      "hungarian",
      [](const std::vector<std::vector<double>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.front().size();
        dtc::CostMatrix cost(r, c);
        for (std::size_t i = 0; i < r; ++i) {
          if (rows[i].size() != c) {
            throw dtc::Error("cost matrix rows must have equal length");
          }
          for (std::size_t j = 0; j < c; ++j) {
            cost(i, j) = rows[i][j];
          }
        }
        const auto a = dtc::hungarian(cost);
        return std::make_pair(a.row_to_col, a.cost);
      },
      py::arg("cost"), "Returns (row_to_col, total_cost); unassigned rows map to -1");
  m.def(
      "greedy_mis",
      [](std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
         const std::optional<std::vector<double>>& weights) {
        dtc::ConflictGraph g(n);
        for (const auto& [a, b] : edges) {
          if (a >= n || b >= n) {
            throw dtc::Error("edge endpoint out of range");
          }
          g.add_edge(a, b);
        }
        return weights ? dtc::greedy_mis(g, *weights) : dtc::greedy_mis(g);
      },
      py::arg("n"), py::arg("edges"), py::arg("weights") = py::none());
}
