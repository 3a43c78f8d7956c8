#pragma once

#include <cstddef>

#include "isomatch/graph.hpp"
#include "isomatch/graph_io.hpp"
#include "isomatch/random.hpp"

namespace isomatch {

// A graph together with a planar rotation system.
struct EmbeddedGraph {
  BipartiteGraph graph;
  RotationSystem rotation;
};

BipartiteGraph complete_bipartite(std::size_t a, std::size_t b);

// Each left/right pair is an edge with probability p. With planted = true a
// random perfect matching is added first (requires num_left == num_right).
BipartiteGraph random_bipartite(std::size_t num_left, std::size_t num_right, double p, Rng& rng,
                                bool planted = false);

// Random bipartite graph with no cycle shorter than min_girth: candidate
// edges are tried in random order and kept when they close no short cycle.
// At most max_edges edges are kept.
BipartiteGraph random_girth_graph(std::size_t num_left, std::size_t num_right,
                                  std::size_t min_girth, std::size_t max_edges, Rng& rng);

// Incidence graph of the Fano plane: 14 vertices, 3-regular, girth 6.
BipartiteGraph heawood_graph();

// rows x cols grid, vertices colored by parity of row + col.
EmbeddedGraph grid_graph(std::size_t rows, std::size_t cols);
// Even cycle on `length` vertices.
EmbeddedGraph cycle_graph(std::size_t length);
// Random tree on `vertices` vertices plus one edge closing an even cycle
// (when such an edge exists).
EmbeddedGraph tree_plus_edge(std::size_t vertices, Rng& rng);
// Random edge subgraph of a grid with the induced embedding.
EmbeddedGraph random_grid_subgraph(std::size_t rows, std::size_t cols, double keep, Rng& rng);

// Rotation of the subgraph keeping only the listed edges.
RotationSystem restrict_rotation(const BipartiteGraph& g, const RotationSystem& rotation,
                                 std::span<const EdgeId> keep);

}  // namespace isomatch
