#include "isomatch/generators.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "isomatch/errors.hpp"

namespace isomatch {

namespace {

void shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.uniform(0, i - 1)]);
}

// Builds an embedded graph from vertex colors and an ordered adjacency list
// over "plain" ids 0..count-1. adj[v] is already in counterclockwise order.
EmbeddedGraph from_colored(const std::vector<int>& color,
                           const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t count = color.size();
  std::vector<std::size_t> side_index(count);
  std::size_t nl = 0, nr = 0;
  for (std::size_t v = 0; v < count; ++v) side_index[v] = color[v] == 0 ? nl++ : nr++;
  auto global = [&](std::size_t v) { return color[v] == 0 ? side_index[v] : nl + side_index[v]; };
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < count; ++v) {
    if (color[v] != 0) continue;
    for (std::size_t u : adj[v]) edges.push_back({side_index[v], side_index[u]});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.left != b.left ? a.left < b.left : a.right < b.right;
  });
  EmbeddedGraph out{BipartiteGraph::with_sizes(nl, nr, std::move(edges)), {}};
  out.rotation.assign(count, {});
  for (std::size_t v = 0; v < count; ++v) {
    for (std::size_t u : adj[v]) out.rotation[global(v)].push_back(global(u));
  }
  return out;
}

}  // namespace

BipartiteGraph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) edges.push_back({i, j});
  }
  return BipartiteGraph::with_sizes(a, b, std::move(edges));
}

BipartiteGraph random_bipartite(std::size_t num_left, std::size_t num_right, double p, Rng& rng,
                                bool planted) {
  if (planted && num_left != num_right) {
    throw InvalidInput("a planted perfect matching needs equal sides");
  }
  std::vector<char> present(num_left * num_right, 0);
  if (planted) {
    std::vector<std::size_t> perm(num_right);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle(perm, rng);
    for (std::size_t i = 0; i < num_left; ++i) present[i * num_right + perm[i]] = 1;
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < num_left; ++i) {
    for (std::size_t j = 0; j < num_right; ++j) {
      if (rng.uniform01() < p) present[i * num_right + j] = 1;
      if (present[i * num_right + j]) edges.push_back({i, j});
    }
  }
  return BipartiteGraph::with_sizes(num_left, num_right, std::move(edges));
}

BipartiteGraph random_girth_graph(std::size_t num_left, std::size_t num_right,
                                  std::size_t min_girth, std::size_t max_edges, Rng& rng) {
  const std::size_t n = num_left + num_right;
  std::vector<std::size_t> order(num_left * num_right);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  std::vector<std::vector<std::size_t>> adj(n);
  std::vector<Edge> edges;
  std::vector<std::size_t> dist(n);
  for (std::size_t slot : order) {
    if (edges.size() >= max_edges) break;
    std::size_t i = slot / num_right, j = slot % num_right;
    std::size_t a = i, b = num_left + j;
    // A new edge a-b closes a cycle of length dist(a, b) + 1.
    std::fill(dist.begin(), dist.end(), kNone);
    std::queue<std::size_t> q;
    dist[a] = 0;
    q.push(a);
    while (!q.empty()) {
      std::size_t x = q.front();
      q.pop();
      if (dist[x] + 1 >= min_girth) break;
      for (std::size_t y : adj[x]) {
        if (dist[y] == kNone) {
          dist[y] = dist[x] + 1;
          q.push(y);
        }
      }
    }
    if (dist[b] != kNone && dist[b] + 1 < min_girth) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
    edges.push_back({i, j});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return x.left != y.left ? x.left < y.left : x.right < y.right;
  });
  return BipartiteGraph::with_sizes(num_left, num_right, std::move(edges));
}

BipartiteGraph heawood_graph() {
  // Lines of the Fano plane over points 0..6.
  const int lines[7][3] = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                           {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  std::vector<Edge> edges;
  for (std::size_t p = 0; p < 7; ++p) {
    for (std::size_t l = 0; l < 7; ++l) {
      for (int q : lines[l]) {
        if (static_cast<std::size_t>(q) == p) edges.push_back({p, l});
      }
    }
  }
  return BipartiteGraph::with_sizes(7, 7, std::move(edges));
}

EmbeddedGraph grid_graph(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw InvalidInput("grid needs positive dimensions");
  const std::size_t count = rows * cols;
  std::vector<int> color(count);
  std::vector<std::vector<std::size_t>> adj(count);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::size_t v = r * cols + c;
      color[v] = static_cast<int>((r + c) % 2);
      // Counterclockwise with rows growing downward: east, north, west, south.
      if (c + 1 < cols) adj[v].push_back(v + 1);
      if (r > 0) adj[v].push_back(v - cols);
      if (c > 0) adj[v].push_back(v - 1);
      if (r + 1 < rows) adj[v].push_back(v + cols);
    }
  }
  return from_colored(color, adj);
}

EmbeddedGraph cycle_graph(std::size_t length) {
  if (length < 4 || length % 2 != 0) throw InvalidInput("cycle length must be even and >= 4");
  std::vector<int> color(length);
  std::vector<std::vector<std::size_t>> adj(length);
  for (std::size_t v = 0; v < length; ++v) {
    color[v] = static_cast<int>(v % 2);
    adj[v] = {(v + 1) % length, (v + length - 1) % length};
  }
  return from_colored(color, adj);
}

EmbeddedGraph tree_plus_edge(std::size_t vertices, Rng& rng) {
  if (vertices < 2) throw InvalidInput("tree needs at least 2 vertices");
  std::vector<int> color(vertices, 0);
  std::vector<std::vector<std::size_t>> adj(vertices);
  for (std::size_t v = 1; v < vertices; ++v) {
    std::size_t parent = rng.uniform(0, v - 1);
    color[v] = 1 - color[parent];
    adj[v].push_back(parent);
    adj[parent].push_back(v);
  }
  // Any rotation of a tree is planar, and there is a single face, so the
  // extra edge can be appended at both ends.
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t a = 0; a < vertices; ++a) {
    for (std::size_t b = a + 1; b < vertices; ++b) {
      if (color[a] == color[b]) continue;
      if (std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end()) continue;
      candidates.emplace_back(a, b);
    }
  }
  if (!candidates.empty()) {
    auto [a, b] = candidates[rng.uniform(0, candidates.size() - 1)];
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return from_colored(color, adj);
}

EmbeddedGraph random_grid_subgraph(std::size_t rows, std::size_t cols, double keep, Rng& rng) {
  EmbeddedGraph grid = grid_graph(rows, cols);
  EdgeSet kept;
  for (EdgeId e = 0; e < grid.graph.edge_count(); ++e) {
    if (rng.uniform01() < keep) kept.push_back(e);
  }
  return {grid.graph.edge_subgraph(kept), restrict_rotation(grid.graph, grid.rotation, kept)};
}

RotationSystem restrict_rotation(const BipartiteGraph& g, const RotationSystem& rotation,
                                 std::span<const EdgeId> keep) {
  std::vector<char> kept(g.edge_count(), 0);
  for (EdgeId e : keep) kept[e] = 1;
  RotationSystem out(rotation.size());
  for (VertexId v = 0; v < rotation.size(); ++v) {
    for (VertexId u : rotation[v]) {
      auto e = g.find_edge_between(v, u);
      if (e && kept[*e]) out[v].push_back(u);
    }
  }
  return out;
}

}  // namespace isomatch
