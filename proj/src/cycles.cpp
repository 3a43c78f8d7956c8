#include "isomatch/cycles.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "isomatch/errors.hpp"
#include "isomatch/parallel.hpp"

namespace isomatch {

Cycle Cycle::from_vertices(const BipartiteGraph& g, std::vector<VertexId> vertices,
                           bool canonicalize) {
  const std::size_t k = vertices.size();
  if (k < 3) throw InvalidInput("cycle needs at least three vertices");
  {
    std::vector<VertexId> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidInput("cycle repeats a vertex");
    }
    if (sorted.back() >= g.vertex_count()) throw InvalidInput("cycle vertex out of range");
  }
  if (canonicalize) {
    auto min_it = std::min_element(vertices.begin(), vertices.end());
    std::rotate(vertices.begin(), min_it, vertices.end());
    if (vertices[k - 1] < vertices[1]) std::reverse(vertices.begin() + 1, vertices.end());
  }
  Cycle c;
  c.edges_.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto e = g.find_edge_between(vertices[i], vertices[(i + 1) % k]);
    if (!e) throw InvalidInput("cycle uses a non-edge");
    c.edges_.push_back(*e);
  }
  c.vertices_ = std::move(vertices);
  return c;
}

Weight circulation(const WeightAssignment& w, const Cycle& c) {
  if (c.length() % 2 != 0) throw InvalidInput("circulation of an odd cycle");
  Weight sum = 0;
  for (std::size_t i = 0; i < c.edges().size(); ++i) {
    EdgeId e = c.edges()[i];
    if (e >= w.size()) throw InvalidInput("weight missing for cycle edge");
    if (i % 2 == 0) {
      sum += w[e];
    } else {
      sum -= w[e];
    }
  }
  return abs(sum);
}

std::int64_t circulation(std::span<const std::int64_t> w, const Cycle& c) {
  if (c.length() % 2 != 0) throw InvalidInput("circulation of an odd cycle");
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < c.edges().size(); ++i) {
    EdgeId e = c.edges()[i];
    if (e >= w.size()) throw InvalidInput("weight missing for cycle edge");
    sum += (i % 2 == 0) ? w[e] : -w[e];
  }
  return sum < 0 ? -sum : sum;
}

namespace {

// Cycles whose least vertex is `start`, reported once per orientation pair.
template <typename Visit>
void cycles_from(const BipartiteGraph& g, VertexId start, std::size_t max_len, Visit&& visit) {
  const std::size_t n = g.vertex_count();
  // Distances back to start inside the vertex set {v >= start}, for pruning.
  constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max() / 2;
  std::vector<std::size_t> dist(n, kFar);
  std::deque<VertexId> queue{start};
  dist[start] = 0;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : g.incident(v)) {
      VertexId u = g.other_end(e, v);
      if (u < start || dist[u] != kFar) continue;
      dist[u] = dist[v] + 1;
      queue.push_back(u);
    }
  }
  std::vector<VertexId> path{start};
  std::vector<char> on_path(n, 0);
  on_path[start] = 1;
  auto dfs = [&](auto&& self, VertexId v) -> void {
    for (EdgeId e : g.incident(v)) {
      VertexId u = g.other_end(e, v);
      if (u == start) {
        if (path.size() >= 3 && path[1] < path.back()) visit(path);
        continue;
      }
      if (u < start || on_path[u]) continue;
      // Closing the cycle through u needs path.size() + dist[u] edges.
      if (path.size() + dist[u] > max_len) continue;
      path.push_back(u);
      on_path[u] = 1;
      self(self, u);
      on_path[u] = 0;
      path.pop_back();
    }
  };
  dfs(dfs, start);
}

}  // namespace

std::vector<Cycle> enumerate_cycles(const BipartiteGraph& g, std::size_t max_len) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<Cycle>> per_start(n);
  parallel_for(n, [&](std::size_t s) {
    cycles_from(g, s, max_len, [&](const std::vector<VertexId>& path) {
      per_start[s].push_back(Cycle::from_vertices(g, path, /*canonicalize=*/false));
    });
  });
  std::vector<Cycle> all;
  for (auto& bucket : per_start) {
    for (auto& c : bucket) all.push_back(std::move(c));
  }
  std::sort(all.begin(), all.end());
  return all;
}

std::size_t count_cycles(const BipartiteGraph& g, std::size_t max_len) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> counts(n, 0);
  parallel_for(n, [&](std::size_t s) {
    cycles_from(g, s, max_len, [&](const std::vector<VertexId>&) { ++counts[s]; });
  });
  std::size_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

std::optional<std::size_t> girth(const BipartiteGraph& g) {
  const std::size_t n = g.vertex_count();
  std::optional<std::size_t> best;
  std::vector<std::size_t> dist(n);
  std::vector<EdgeId> via(n);
  for (VertexId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kNone);
    dist[s] = 0;
    via[s] = kNone;
    std::deque<VertexId> queue{s};
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      for (EdgeId e : g.incident(v)) {
        if (e == via[v]) continue;
        VertexId u = g.other_end(e, v);
        if (dist[u] == kNone) {
          dist[u] = dist[v] + 1;
          via[u] = e;
          queue.push_back(u);
        } else {
          std::size_t len = dist[u] + dist[v] + 1;
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

bool girth_at_least(const BipartiteGraph& g, std::size_t r) {
  auto shortest = girth(g);
  return !shortest || *shortest > r;
}

std::vector<Cycle> symmetric_difference(const BipartiteGraph& g, const MatchingSet& m1,
                                        const MatchingSet& m2) {
  if (!m1.is_perfect() || !m2.is_perfect()) {
    throw InvalidInput("symmetric difference needs two perfect matchings");
  }
  const std::size_t n = g.vertex_count();
  // Alternate between the two matchings' partner maps.
  std::vector<VertexId> mate1(n, kNone), mate2(n, kNone);
  for (EdgeId e : m1.edges()) {
    mate1[g.left_end(e)] = g.right_end(e);
    mate1[g.right_end(e)] = g.left_end(e);
  }
  for (EdgeId e : m2.edges()) {
    mate2[g.left_end(e)] = g.right_end(e);
    mate2[g.right_end(e)] = g.left_end(e);
  }
  std::vector<char> seen(n, 0);
  std::vector<Cycle> out;
  for (VertexId s = 0; s < n; ++s) {
    if (seen[s] || mate1[s] == mate2[s]) continue;
    std::vector<VertexId> walk;
    VertexId v = s;
    bool use_first = true;
    do {
      seen[v] = 1;
      walk.push_back(v);
      v = use_first ? mate1[v] : mate2[v];
      use_first = !use_first;
    } while (v != s);
    out.push_back(Cycle::from_vertices(g, std::move(walk)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace isomatch
