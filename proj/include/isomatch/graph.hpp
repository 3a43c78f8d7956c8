#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace isomatch {

// Vertex ids are global: left vertex i is i, right vertex j is num_left() + j.
using VertexId = std::size_t;
// Edge ids are positions in the graph's edge list and fix the order e1..em.
using EdgeId = std::size_t;
// Sorted list of edge ids of one graph.
using EdgeSet = std::vector<EdgeId>;

inline constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Edge {
  std::size_t left;   // index into the left side
  std::size_t right;  // index into the right side

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable bipartite graph with an explicit left/right partition.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(std::vector<std::string> left, std::vector<std::string> right,
                 std::vector<Edge> edges);

  // Graph with vertices named u1..u{nl} and v1..v{nr}.
  static BipartiteGraph with_sizes(std::size_t num_left, std::size_t num_right,
                                   std::vector<Edge> edges);

  std::size_t num_left() const { return left_.size(); }
  std::size_t num_right() const { return right_.size(); }
  std::size_t vertex_count() const { return left_.size() + right_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool is_balanced() const { return left_.size() == right_.size(); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<std::string>& left_names() const { return left_; }
  const std::vector<std::string>& right_names() const { return right_; }
  const std::string& vertex_name(VertexId v) const;

  VertexId left_vertex(std::size_t i) const { return i; }
  VertexId right_vertex(std::size_t j) const { return left_.size() + j; }
  bool is_left(VertexId v) const { return v < left_.size(); }
  VertexId left_end(EdgeId e) const { return edges_[e].left; }
  VertexId right_end(EdgeId e) const { return left_.size() + edges_[e].right; }
  // The endpoint of e that is not v.
  VertexId other_end(EdgeId e, VertexId v) const;

  std::optional<EdgeId> find_edge(std::size_t left, std::size_t right) const;
  std::optional<EdgeId> find_edge_between(VertexId a, VertexId b) const;
  std::span<const EdgeId> incident(VertexId v) const { return incident_[v]; }
  std::size_t degree(VertexId v) const { return incident_[v].size(); }

  // Same vertex set, only the listed edges (in increasing parent order).
  // The i-th edge of the result is keep[i] of this graph after sorting.
  BipartiteGraph edge_subgraph(std::span<const EdgeId> keep) const;
  EdgeSet all_edges() const;

 private:
  void build_index();

  std::vector<std::string> left_;
  std::vector<std::string> right_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
  std::vector<EdgeId> slot_;  // num_left x num_right, kNone where absent
};

using Weight = mpz_class;

// Integer weight per edge, indexed by EdgeId.
class WeightAssignment {
 public:
  WeightAssignment() = default;
  explicit WeightAssignment(std::size_t edge_count) : w_(edge_count, 0) {}
  explicit WeightAssignment(std::vector<Weight> weights) : w_(std::move(weights)) {}
  WeightAssignment(std::initializer_list<long> weights);
  static WeightAssignment from_ints(std::span<const std::int64_t> weights);

  std::size_t size() const { return w_.size(); }
  const Weight& operator[](EdgeId e) const { return w_[e]; }
  Weight& operator[](EdgeId e) { return w_[e]; }
  const std::vector<Weight>& values() const { return w_; }

  Weight total(std::span<const EdgeId> edges) const;
  Weight max() const;  // 0 for an empty assignment
  bool all_nonnegative() const;
  // Weights as int64 when every value fits with headroom for sums of n terms.
  std::optional<std::vector<std::int64_t>> as_int64() const;
  // Assignment on a subgraph whose edges are parent[keep[i]].
  WeightAssignment restrict_to(std::span<const EdgeId> keep) const;

  friend bool operator==(const WeightAssignment&, const WeightAssignment&) = default;

 private:
  std::vector<Weight> w_;
};

enum class MatchingKind { kNotAMatching, kMatching, kPerfect };

// Edge subset tagged with its matching classification.
class MatchingSet {
 public:
  MatchingSet() = default;
  MatchingSet(const BipartiteGraph& g, EdgeSet edges);

  const EdgeSet& edges() const { return edges_; }
  MatchingKind kind() const { return kind_; }
  bool is_matching() const { return kind_ != MatchingKind::kNotAMatching; }
  bool is_perfect() const { return kind_ == MatchingKind::kPerfect; }
  std::size_t size() const { return edges_.size(); }
  bool contains(EdgeId e) const;

  friend bool operator==(const MatchingSet& a, const MatchingSet& b) { return a.edges_ == b.edges_; }

 private:
  EdgeSet edges_;
  MatchingKind kind_ = MatchingKind::kMatching;
};

MatchingKind classify_matching(const BipartiteGraph& g, std::span<const EdgeId> edges);

}  // namespace isomatch
