#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "lll/graph.hpp"

namespace lll {

/// Raised for unreadable or malformed input files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A graph together with the family label it was generated from, if known.
struct LabeledGraph {
  Graph graph;
  std::string family = "unknown";
  nlohmann::json params = nlohmann::json::object();
};

// Text form: "p <n> <m>" then one "e <u> <v>" per edge, 0-indexed. Lines
// starting with 'c' are comments; "c family <name>" and
// "c param <key> <int>" carry the label.
void write_graph_text(std::ostream& out, const LabeledGraph& g);
LabeledGraph read_graph_text(std::istream& in);

// JSON form: {"n": int, "edges": [[u, v], ...]} plus optional
// "family" and "params".
nlohmann::json graph_to_json(const LabeledGraph& g);
LabeledGraph graph_from_json(const nlohmann::json& j);

/// Dispatches on extension: ".json" uses the JSON form, anything else text.
void save_graph(const std::filesystem::path& path, const LabeledGraph& g);
LabeledGraph load_graph(const std::filesystem::path& path);

LabeledGraph labeled(const FamilySpec& spec);

}  // namespace lll
