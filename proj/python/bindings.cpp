// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lanematch/generators.hpp"
#include "lanematch/oracle.hpp"
#include "lanematch/runner.hpp"

namespace py = pybind11;
namespace lm = lanematch;

namespace {

lm::Graph graph_from_edges(std::size_t n, const std::vector<std::pair<lm::VertexId, lm::VertexId>>& edges,
                           std::vector<lm::LabelId> labels) {
  std::vector<lm::Edge> e(edges.begin(), edges.end());
  return lm::Graph::from_edges(n, e, std::move(labels));
}

std::string count_json(const lm::Graph& data, const lm::QueryGraph& query, const std::string& engine,
                       std::uint64_t tau, std::size_t workers, std::size_t lane_width, unsigned unroll,
                       bool steal, double timeout) {
  lm::RunConfig config;
  config.engine = lm::parse_engine(engine);
  config.tau = tau;
  config.workers = workers;
  config.lane_width = lane_width;
  config.sigma = unroll;
  config.steal = steal;
  config.timeout_seconds = timeout;
  const lm::MatchingOrder order = lm::generate_order(query);
  lm::RunReport report;
  {
    py::gil_scoped_release release;
    report = lm::run_instance(data, query, order, config);
  }
  return lm::emit_report(report, lm::ReportFormat::kJson);
}

}  // namespace

PYBIND11_MODULE(_lanematch, m) {
  py::register_exception<lm::Error>(m, "LanematchError", PyExc_RuntimeError);

  py::class_<lm::Graph>(m, "Graph")
      .def_static("from_edges", &graph_from_edges, py::arg("n"), py::arg("edges"),
                  py::arg("labels") = std::vector<lm::LabelId>{})
      .def_static(
          "load",
          [](const std::string& path, std::optional<std::string> labels) {
            std::optional<std::filesystem::path> lp;
            if (labels) lp = *labels;
            return lm::load_graph(path, lp);
          },
          py::arg("path"), py::arg("labels") = py::none())
      .def_property_readonly("num_vertices", &lm::Graph::num_vertices)
      .def_property_readonly("num_edges", &lm::Graph::num_edges)
      .def_property_readonly("d_max", &lm::Graph::d_max)
      .def("degree", &lm::Graph::degree)
      .def("label", &lm::Graph::label)
      .def("neighbors", [](const lm::Graph& g, lm::VertexId v) {
        const auto n = g.neighbors(v);
        return std::vector<lm::VertexId>(n.begin(), n.end());
      });

  py::class_<lm::QueryGraph>(m, "Query")
      .def(py::init<lm::Graph>(), py::arg("graph"))
      .def_static(
          "from_edges",
          [](std::size_t n, const std::vector<std::pair<lm::VertexId, lm::VertexId>>& edges,
             std::vector<lm::LabelId> labels) {
            return lm::QueryGraph(graph_from_edges(n, edges, std::move(labels)));
          },
          py::arg("n"), py::arg("edges"), py::arg("labels") = std::vector<lm::LabelId>{})
      .def_static("random", &lm::random_query, py::arg("data"), py::arg("size"), py::arg("seed"))
      .def_property_readonly("size", &lm::QueryGraph::size)
      .def_property_readonly("graph", &lm::QueryGraph::graph, py::return_value_policy::reference_internal);

  m.def("_count_json", &count_json, py::arg("data"), py::arg("query"), py::arg("engine"),
        py::arg("tau"), py::arg("workers"), py::arg("lane_width"), py::arg("unroll"),
        py::arg("steal"), py::arg("timeout"));
  m.def(
      "oracle_count",
      [](const lm::QueryGraph& q, const lm::Graph& g) { return lm::enumerate_all(q, g).count; },
      py::arg("query"), py::arg("data"));

  m.def(
      "rmat",
      [](std::uint64_t n, std::uint64_t edges, std::uint64_t seed) {
        lm::RmatParams p;
        p.n = n;
        p.m = edges;
        return lm::rmat(p, seed);
      },
      py::arg("n"), py::arg("m"), py::arg("seed") = 0);
  m.def("erdos_renyi", &lm::erdos_renyi, py::arg("n"), py::arg("p"), py::arg("seed") = 0);
  m.def("star", &lm::star, py::arg("n"));
  m.def("skewed_fixture", &lm::skewed_fixture, py::arg("major_leaves") = 200,
        py::arg("minor_hubs") = 60, py::arg("minor_leaves") = 4);
  m.def("skewed_query", &lm::skewed_query);
  m.def("triangle", &lm::triangle_pattern);
  m.def("clique4", &lm::clique4_pattern);
}
