#include "isomatch/graph.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "isomatch/errors.hpp"

namespace isomatch {

BipartiteGraph::BipartiteGraph(std::vector<std::string> left, std::vector<std::string> right,
                               std::vector<Edge> edges)
    : left_(std::move(left)), right_(std::move(right)), edges_(std::move(edges)) {
  std::unordered_set<std::string> names;
  for (const auto& n : left_) {
    if (!names.insert(n).second) throw InvalidInput("duplicate vertex name: " + n);
  }
  for (const auto& n : right_) {
    if (!names.insert(n).second) throw InvalidInput("vertex on both sides or duplicated: " + n);
  }
  build_index();
}

BipartiteGraph BipartiteGraph::with_sizes(std::size_t num_left, std::size_t num_right,
                                          std::vector<Edge> edges) {
  std::vector<std::string> left, right;
  for (std::size_t i = 0; i < num_left; ++i) left.push_back("u" + std::to_string(i + 1));
  for (std::size_t j = 0; j < num_right; ++j) right.push_back("v" + std::to_string(j + 1));
  return BipartiteGraph(std::move(left), std::move(right), std::move(edges));
}

void BipartiteGraph::build_index() {
  const std::size_t nl = left_.size(), nr = right_.size();
  slot_.assign(nl * nr, kNone);
  incident_.assign(nl + nr, {});
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const Edge& ed = edges_[e];
    if (ed.left >= nl || ed.right >= nr) throw InvalidInput("edge endpoint out of range");
    EdgeId& s = slot_[ed.left * nr + ed.right];
    if (s != kNone) {
      throw InvalidInput("duplicate edge " + left_[ed.left] + "-" + right_[ed.right]);
    }
    s = e;
    incident_[ed.left].push_back(e);
    incident_[nl + ed.right].push_back(e);
  }
}

const std::string& BipartiteGraph::vertex_name(VertexId v) const {
  return v < left_.size() ? left_.at(v) : right_.at(v - left_.size());
}

VertexId BipartiteGraph::other_end(EdgeId e, VertexId v) const {
  return v == left_end(e) ? right_end(e) : left_end(e);
}

std::optional<EdgeId> BipartiteGraph::find_edge(std::size_t left, std::size_t right) const {
  if (left >= left_.size() || right >= right_.size()) return std::nullopt;
  EdgeId e = slot_[left * right_.size() + right];
  if (e == kNone) return std::nullopt;
  return e;
}

std::optional<EdgeId> BipartiteGraph::find_edge_between(VertexId a, VertexId b) const {
  if (is_left(a) == is_left(b)) return std::nullopt;
  if (!is_left(a)) std::swap(a, b);
  return find_edge(a, b - left_.size());
}

BipartiteGraph BipartiteGraph::edge_subgraph(std::span<const EdgeId> keep) const {
  EdgeSet sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Edge> kept;
  kept.reserve(sorted.size());
  for (EdgeId e : sorted) kept.push_back(edges_.at(e));
  BipartiteGraph sub;
  sub.left_ = left_;
  sub.right_ = right_;
  sub.edges_ = std::move(kept);
  sub.build_index();
  return sub;
}

EdgeSet BipartiteGraph::all_edges() const {
  EdgeSet all(edges_.size());
  for (EdgeId e = 0; e < all.size(); ++e) all[e] = e;
  return all;
}

WeightAssignment::WeightAssignment(std::initializer_list<long> weights) {
  w_.reserve(weights.size());
  for (long w : weights) w_.emplace_back(w);
}

WeightAssignment WeightAssignment::from_ints(std::span<const std::int64_t> weights) {
  std::vector<Weight> w;
  w.reserve(weights.size());
  for (std::int64_t x : weights) w.emplace_back(static_cast<long>(x));
  return WeightAssignment(std::move(w));
}

Weight WeightAssignment::total(std::span<const EdgeId> edges) const {
  Weight sum = 0;
  for (EdgeId e : edges) sum += w_.at(e);
  return sum;
}

Weight WeightAssignment::max() const {
  Weight best = 0;
  bool first = true;
  for (const auto& x : w_) {
    if (first || x > best) best = x;
    first = false;
  }
  return best;
}

bool WeightAssignment::all_nonnegative() const {
  return std::all_of(w_.begin(), w_.end(), [](const Weight& x) { return sgn(x) >= 0; });
}

std::optional<std::vector<std::int64_t>> WeightAssignment::as_int64() const {
  // Leave room for sums over up to 2^16 edges.
  static const mpz_class kLimit = mpz_class(1) << 46;
  std::vector<std::int64_t> out;
  out.reserve(w_.size());
  for (const auto& x : w_) {
    if (abs(x) >= kLimit) return std::nullopt;
    out.push_back(x.get_si());
  }
  return out;
}

WeightAssignment WeightAssignment::restrict_to(std::span<const EdgeId> keep) const {
  EdgeSet sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Weight> w;
  w.reserve(sorted.size());
  for (EdgeId e : sorted) w.push_back(w_.at(e));
  return WeightAssignment(std::move(w));
}

MatchingKind classify_matching(const BipartiteGraph& g, std::span<const EdgeId> edges) {
  std::vector<char> used(g.vertex_count(), 0);
  for (EdgeId e : edges) {
    if (e >= g.edge_count()) return MatchingKind::kNotAMatching;
    VertexId a = g.left_end(e), b = g.right_end(e);
    if (used[a] || used[b]) return MatchingKind::kNotAMatching;
    used[a] = used[b] = 1;
  }
  if (g.is_balanced() && 2 * edges.size() == g.vertex_count()) return MatchingKind::kPerfect;
  return MatchingKind::kMatching;
}

MatchingSet::MatchingSet(const BipartiteGraph& g, EdgeSet edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  kind_ = classify_matching(g, edges_);
}

bool MatchingSet::contains(EdgeId e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

}  // namespace isomatch
