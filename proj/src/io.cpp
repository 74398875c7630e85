#include "lll/io.hpp"

#include <fstream>
#include <sstream>

namespace lll {

void write_graph_text(std::ostream& out, const LabeledGraph& g) {
  out << "p " << g.graph.vertex_count() << ' ' << g.graph.edge_count() << '\n';
  out << "c family " << g.family << '\n';
  for (auto& [key, value] : g.params.items()) out << "c param " << key << ' ' << value << '\n';
  for (auto [u, v] : g.graph.edges()) out << "e " << u << ' ' << v << '\n';
}

LabeledGraph read_graph_text(std::istream& in) {
  LabeledGraph out;
  std::string line;
  std::size_t n = 0, m = 0, line_no = 0;
  bool header = false;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    auto fail = [&](const std::string& what) {
      throw FormatError("line " + std::to_string(line_no) + ": " + what);
    };
    if (tag == "c") {
      std::string kind;
      ls >> kind;
      if (kind == "family") {
        ls >> out.family;
      } else if (kind == "param") {
        std::string key;
        long long value = 0;
        if (ls >> key >> value) out.params[key] = value;
      }
    } else if (tag == "p") {
      if (header) fail("duplicate header");
      if (!(ls >> n >> m)) fail("malformed header");
      header = true;
      edges.reserve(m);
    } else if (tag == "e") {
      if (!header) fail("edge before header");
      long long u = -1, v = -1;
      if (!(ls >> u >> v) || u < 0 || v < 0) fail("malformed edge");
      edges.emplace_back(Vertex(u), Vertex(v));
    } else {
      fail("unknown line tag '" + tag + "'");
    }
  }
  if (!header) throw FormatError("missing 'p' header");
  if (edges.size() != m) throw FormatError("edge count does not match header");
  try {
    out.graph = Graph::from_edges(n, edges);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return out;
}

nlohmann::json graph_to_json(const LabeledGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.graph.edges()) edges.push_back({u, v});
  return {{"n", g.graph.vertex_count()}, {"edges", edges}, {"family", g.family},
          {"params", g.params}};
}

LabeledGraph graph_from_json(const nlohmann::json& j) {
  LabeledGraph out;
  try {
    auto n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
    out.graph = Graph::from_edges(n, edges);
    if (j.contains("family")) out.family = j["family"].get<std::string>();
    if (j.contains("params")) out.params = j["params"];
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad graph json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  return out;
}

void save_graph(const std::filesystem::path& path, const LabeledGraph& g) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  if (path.extension() == ".json") out << graph_to_json(g).dump() << '\n';
  else write_graph_text(out, g);
  if (!out) throw FormatError("write failed for " + path.string());
}

LabeledGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  if (path.extension() == ".json") {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(path.string() + ": " + e.what());
    }
    return graph_from_json(j);
  }
  return read_graph_text(in);
}

LabeledGraph labeled(const FamilySpec& spec) {
  LabeledGraph g{generate(spec), to_string(spec.kind), nlohmann::json::object()};
  switch (spec.kind) {
    case Family::path:
    case Family::cycle:
    case Family::grid_line: g.params["n"] = spec.n; break;
    case Family::comb:
      g.params["n"] = spec.n;
      g.params["r"] = spec.r;
      break;
    case Family::grid:
    case Family::torus:
      g.params["width"] = spec.width;
      g.params["height"] = spec.height;
      break;
  }
  return g;
}

}  // namespace lll
