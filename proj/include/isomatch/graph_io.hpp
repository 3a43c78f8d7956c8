#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "isomatch/graph.hpp"

namespace isomatch {

using Json = nlohmann::ordered_json;

// For each vertex, its neighbors in counterclockwise order.
using RotationSystem = std::vector<std::vector<VertexId>>;

struct GraphFile {
  BipartiteGraph graph;
  std::optional<WeightAssignment> weights;  // present iff the file carried weights
  std::optional<RotationSystem> rotation;
};

// {"left": [...], "right": [...], "edges": [["u","v", w?], ...], "rotation": {...}?}
GraphFile parse_graph_json(std::string_view text);
// "c" comments, "p edge NL NR M", then "e u v [w]" with 1-based side indices.
GraphFile parse_graph_dimacs(std::string_view text);
// Picks the reader from the first non-blank character ('{' means JSON).
GraphFile parse_graph(std::string_view text);
GraphFile load_graph_file(const std::filesystem::path& path);

Json graph_to_json(const BipartiteGraph& g, const WeightAssignment* w = nullptr,
                   const RotationSystem* rotation = nullptr);

// Integer when it fits in int64, decimal string otherwise.
Json weight_to_json(const Weight& w);
Weight weight_from_json(const Json& j);
Json weights_to_json(const BipartiteGraph& g, const WeightAssignment& w);
Json matching_to_json(const BipartiteGraph& g, std::span<const EdgeId> edges);
std::string edge_label(const BipartiteGraph& g, EdgeId e);

}  // namespace isomatch
