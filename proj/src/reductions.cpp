#include "isomatch/reductions.hpp"

#include <algorithm>

#include "isomatch/errors.hpp"
#include "isomatch/mvv.hpp"
#include "isomatch/oracle.hpp"
#include "isomatch/rounds.hpp"

namespace isomatch {

ScaledWeight stack_weights(const BipartiteGraph& g, const WeightAssignment& given,
                           const CombinedWeight& iso) {
  if (given.size() != g.edge_count() || iso.combined.size() != g.edge_count()) {
    throw InvalidInput("weights do not match graph");
  }
  ScaledWeight out{given, iso, 0, WeightAssignment(g.edge_count())};
  const unsigned long half = static_cast<unsigned long>(g.vertex_count() / 2);
  out.scale = 1 + Weight(half) * iso.combined.max();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out.stacked[e] = given[e] * out.scale + iso.combined[e];
  }
  return out;
}

WeightedMatching min_weight_pm(const BipartiteGraph& g, const WeightAssignment& given,
                               std::size_t workers) {
  if (given.size() != g.edge_count()) throw InvalidInput("weights do not match graph");
  if (!given.all_nonnegative()) throw InvalidInput("given weights must be nonnegative");
  if (!g.is_balanced() || !has_perfect_matching(g)) {
    throw NoPerfectMatching("graph has no perfect matching");
  }
  WeightedMatching out;
  if (g.vertex_count() == 0) {
    out.matching = MatchingSet(g, {});
    out.given_weight = 0;
    out.method = "empty";
    return out;
  }
  out.given_union = min_weight_union_edges(g, given, UnionMethod::kForced, workers);
  const BipartiteGraph g1 = g.edge_subgraph(out.given_union);
  AdaptiveOptions options;
  options.workers = workers;
  const AdaptiveResult rounds = run_rounds_adaptive(g1, options);
  if (!rounds.isolating) throw InvariantViolation("round scheme weight does not isolate");

  // Lift the round weights to g; edges outside the union get 0.
  std::vector<WeightAssignment> lifted;
  for (const auto& r : rounds.weight.rounds) {
    WeightAssignment w(g.edge_count());
    for (std::size_t i = 0; i < out.given_union.size(); ++i) w[out.given_union[i]] = r[i];
    lifted.push_back(std::move(w));
  }
  out.weights = stack_weights(g, given, combine(lifted, g.vertex_count() / 2));
  const WeightAssignment& stacked = out.weights.stacked;

  if (stacked.max() <= kStackedMvvCap) {
    auto ex = extract(g, stacked, workers);
    if (!ex.matching) throw InvariantViolation("extraction failed: " + ex.failure);
    out.matching = *ex.matching;
    out.method = "mvv";
  } else {
    EdgeSet u = min_weight_union_edges(g, stacked, UnionMethod::kForced, workers);
    out.matching = MatchingSet(g, u);
    if (!out.matching.is_perfect()) throw InvariantViolation("stacked weight does not isolate");
    out.method = "forced-union";
  }
  out.given_weight = given.total(out.matching.edges());
  auto best = hungarian(g, given);
  if (!best || best->first != out.given_weight) {
    throw InvariantViolation("returned matching is not of minimum given weight");
  }
  return out;
}

PaddedGraph pad_for_maximum(const BipartiteGraph& g) {
  const std::size_t nl = g.num_left(), nr = g.num_right();
  std::vector<std::string> left = g.left_names(), right = g.right_names();
  for (std::size_t i = 0; i < nr; ++i) left.push_back("dummy_l" + std::to_string(i + 1));
  for (std::size_t i = 0; i < nl; ++i) right.push_back("dummy_r" + std::to_string(i + 1));
  std::vector<Edge> edges = g.edges();
  std::vector<long> weights(edges.size(), 0);
  for (std::size_t l = 0; l < nl; ++l) {
    for (std::size_t d = 0; d < nl; ++d) {
      edges.push_back({l, nr + d});
      weights.push_back(1);
    }
  }
  for (std::size_t d = 0; d < nr; ++d) {
    for (std::size_t r = 0; r < nr; ++r) {
      edges.push_back({nl + d, r});
      weights.push_back(1);
    }
  }
  for (std::size_t d = 0; d < std::min(nl, nr); ++d) {
    edges.push_back({nl + d, nr + d});
    weights.push_back(0);
  }
  PaddedGraph out;
  out.graph = BipartiteGraph(std::move(left), std::move(right), std::move(edges));
  out.weights = WeightAssignment(std::vector<Weight>(weights.begin(), weights.end()));
  out.real_edges = g.edge_count();
  return out;
}

MatchingSet maximum_matching(const BipartiteGraph& g, std::size_t workers) {
  if (g.edge_count() == 0) return MatchingSet(g, {});
  PaddedGraph padded = pad_for_maximum(g);
  WeightedMatching pm = min_weight_pm(padded.graph, padded.weights, workers);
  EdgeSet real;
  for (EdgeId e : pm.matching.edges()) {
    if (e < padded.real_edges) real.push_back(e);
  }
  MatchingSet out(g, real);
  if (!out.is_matching()) throw InvariantViolation("stripped edges are not a matching");
  return out;
}

}  // namespace isomatch
