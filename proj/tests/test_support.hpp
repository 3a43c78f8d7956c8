#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "isomatch/generators.hpp"
#include "isomatch/graph.hpp"
#include "isomatch/random.hpp"

namespace isomatch::testing {

inline BipartiteGraph make_graph(std::size_t nl, std::size_t nr,
                                 std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  std::vector<Edge> edges;
  for (auto [l, r] : pairs) edges.push_back({l, r});
  return BipartiteGraph::with_sizes(nl, nr, std::move(edges));
}

// Random graph with 1..max_side vertices per side; balanced and planted when
// `planted` is set.
inline BipartiteGraph random_graph(Rng& rng, std::size_t max_side, bool planted = false) {
  std::size_t nl = rng.uniform(1, max_side);
  std::size_t nr = planted ? nl : rng.uniform(1, max_side);
  double p = 0.25 + 0.6 * rng.uniform01();
  return random_bipartite(nl, nr, p, rng, planted);
}

inline WeightAssignment random_weights(const BipartiteGraph& g, Rng& rng, std::uint64_t lo,
                                       std::uint64_t hi) {
  WeightAssignment w(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    w[e] = Weight(static_cast<unsigned long>(rng.uniform(lo, hi)));
  }
  return w;
}

}  // namespace isomatch::testing
