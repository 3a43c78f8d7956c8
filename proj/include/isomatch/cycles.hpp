#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "isomatch/graph.hpp"

namespace isomatch {

// Simple cycle v1..vk of a graph; edges()[i] joins vertices()[i] and
// vertices()[(i+1) % k].
class Cycle {
 public:
  Cycle() = default;

  // Validates that consecutive vertices are adjacent and all distinct.
  // With canonicalize=true the sequence is rotated to start at its least
  // vertex, in the orientation whose second vertex is smaller.
  static Cycle from_vertices(const BipartiteGraph& g, std::vector<VertexId> vertices,
                             bool canonicalize = true);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<EdgeId>& edges() const { return edges_; }
  std::size_t length() const { return vertices_.size(); }

  friend bool operator==(const Cycle& a, const Cycle& b) { return a.vertices_ == b.vertices_; }
  friend bool operator<(const Cycle& a, const Cycle& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.vertices_ < b.vertices_;
  }

 private:
  std::vector<VertexId> vertices_;
  std::vector<EdgeId> edges_;
};

// |w(e1) - w(e2) + w(e3) - ... - w(ek)| over the cycle's edges.
Weight circulation(const WeightAssignment& w, const Cycle& c);
// Same on a plain int64 weight vector (no overflow checks beyond the caller's).
std::int64_t circulation(std::span<const std::int64_t> w, const Cycle& c);

// All simple cycles of length <= max_len, canonical and sorted by
// (length, vertex sequence).
std::vector<Cycle> enumerate_cycles(const BipartiteGraph& g, std::size_t max_len);
std::size_t count_cycles(const BipartiteGraph& g, std::size_t max_len);

// Length of a shortest cycle, nullopt for forests.
std::optional<std::size_t> girth(const BipartiteGraph& g);
// True iff g has no cycle of length <= r.
bool girth_at_least(const BipartiteGraph& g, std::size_t r);

// Decomposes M1 xor M2 of two perfect matchings into vertex-disjoint cycles.
std::vector<Cycle> symmetric_difference(const BipartiteGraph& g, const MatchingSet& m1,
                                        const MatchingSet& m2);

}  // namespace isomatch
