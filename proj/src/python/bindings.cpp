#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lll/geodesic.hpp"
#include "lll/gh_metric.hpp"
#include "lll/graph.hpp"
#include "lll/io.hpp"
#include "lll/local_gh.hpp"
#include "lll/local_topology.hpp"

namespace py = pybind11;

namespace {

lll::Graph make_graph(std::size_t n, const std::vector<lll::Edge>& edges) { return lll::Graph::from_edges(n, edges); }

lll::Graph generate(const std::string& family, std::uint32_t n, std::uint32_t r, std::uint32_t width,
                    std::uint32_t height) {
  auto kind = lll::parse_family(family);
  if (!kind) throw std::invalid_argument("unknown family '" + family + "'");
  return lll::generate(lll::FamilySpec{*kind, n, r, width, height});
}

py::tuple rational(const lll::Rational& q) { return py::make_tuple(q.numerator(), q.denominator()); }

}  // namespace

PYBIND11_MODULE(_lll, m) {
  m.doc() = "Graph local-geometry toolkit";
  py::register_exception<lll::FormatError>(m, "FormatError", PyExc_ValueError);

  py::class_<lll::Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"))
      .def_property_readonly("vertex_count", &lll::Graph::vertex_count)
      .def_property_readonly("edge_count", &lll::Graph::edge_count)
      .def("neighbors",
           [](const lll::Graph& g, lll::Vertex v) {
             if (!g.contains(v)) throw py::index_error("vertex out of range");
             auto s = g.neighbors(v);
             return std::vector<lll::Vertex>(s.begin(), s.end());
           })
      .def("edges", &lll::Graph::edges)
      .def("__len__", &lll::Graph::vertex_count);

  m.def("generate", &generate, py::arg("family"), py::arg("n") = 0, py::arg("r") = 0, py::arg("width") = 0,
        py::arg("height") = 0);
  m.def("load_graph", [](const std::string& path) { return lll::load_graph(path).graph; });
  m.def("bfs_distances", py::overload_cast<const lll::Graph&, lll::Vertex>(&lll::bfs_distances));
  m.def("diameter", [](const lll::Graph& g, bool exact) {
    auto d = lll::diameter(g, exact ? lll::DiameterMode::exact : lll::DiameterMode::double_sweep);
    return py::make_tuple(d.value, d.u, d.v);
  }, py::arg("g"), py::arg("exact") = true);

  m.def("canonical_code", [](const lll::Graph& g, lll::Vertex root) {
    return lll::canonical_code(lll::RootedGraph{g, root}).hex();
  });
  m.def("locality_radius", [](const lll::Graph& a, lll::Vertex ra, const lll::Graph& b, lll::Vertex rb,
                              lll::Distance cap) {
    auto r = lll::locality_radius({a, ra}, {b, rb}, cap);
    return py::make_tuple(r.radius, r.at_cap);
  });
  m.def("ball_census", [](const lll::Graph& g, lll::Distance r) {
    std::map<std::string, py::tuple> out;
    for (const auto& [code, q] : lll::ball_census(g, r).frequencies) out[code.hex()] = rational(q);
    return out;
  });

  m.def("gh_exact_small", [](const std::vector<std::vector<double>>& x, std::size_t bx,
                             const std::vector<std::vector<double>>& y, std::size_t by) {
    auto flatten = [](const std::vector<std::vector<double>>& rows) {
      std::vector<double> flat;
      for (const auto& r : rows) {
        if (r.size() != rows.size()) throw std::invalid_argument("distance matrix must be square");
        flat.insert(flat.end(), r.begin(), r.end());
      }
      return flat;
    };
    return lll::gh_exact_small(lll::PointedMetricSpace(x.size(), flatten(x), bx),
                               lll::PointedMetricSpace(y.size(), flatten(y), by));
  });

  m.def("local_gh_to_line", [](const lll::Graph& g, lll::Vertex v, double s, std::size_t k_max) {
    auto b = lll::local_gh_to_line(g, v, s, k_max);
    return py::make_tuple(b.lower, b.upper);
  }, py::arg("g"), py::arg("v"), py::arg("scale"), py::arg("k_max") = 16);

  m.def("max_geodesic", [](const lll::Graph& g) { return lll::max_geodesic(g).vertices; });
  m.def("cell_sizes", [](const lll::Graph& g) {
    auto dec = lll::project_cells(g, lll::max_geodesic(g), false);
    std::vector<std::size_t> sizes;
    for (const auto& c : dec.cells) sizes.push_back(c.size());
    return sizes;
  });
}
