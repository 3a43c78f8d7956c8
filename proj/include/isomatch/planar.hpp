#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "isomatch/graph.hpp"
#include "isomatch/graph_io.hpp"
#include "isomatch/isolation.hpp"

namespace isomatch {

// Dart 2e runs left to right along edge e, dart 2e + 1 runs back.
using DartId = std::size_t;

struct PlanarEmbedding {
  BipartiteGraph graph;
  RotationSystem rotation;
  std::vector<std::vector<DartId>> faces;
  std::vector<std::size_t> face_component;
  std::vector<char> outer;                 // per face, one per component
  std::vector<std::size_t> component;      // per vertex
  std::size_t component_count = 0;
  std::vector<char> left_to_right;         // per edge orientation; empty until oriented
};

// Checks that rotation[v] lists exactly v's neighbors once each and that the
// traced faces satisfy V - E + F = 2 on every connected component. Throws
// InvalidInput otherwise.
void validate_rotation(const BipartiteGraph& g, const RotationSystem& rotation);

// Faces of the embedding, traced by next(u -> v) = (v -> successor of u
// around v). The longest face of each component is marked outer.
PlanarEmbedding trace_faces(const BipartiteGraph& g, const RotationSystem& rotation);

// Orientation with an odd number of darts agreeing with the orientation on
// every non-outer face (faces of a bipartite graph are even, so this does not
// depend on the direction a face is read). Spanning-forest edges point left
// to right; the remaining edges are fixed by peeling leaves of the dual tree.
PlanarEmbedding pfaffian_orient(const BipartiteGraph& g, const RotationSystem& rotation);

// Darts of `face` that agree with the orientation.
std::size_t agreeing_darts(const PlanarEmbedding& emb, std::size_t face);
bool is_pfaffian(const PlanarEmbedding& emb);

// weight -> number of perfect matchings of that weight. Counts are positive;
// weights absent from the map have no matching.
using WeightCountPolynomial = std::map<Weight, mpz_class>;

inline constexpr std::size_t kMaxCountDegree = 1'000'000;

// Histogram of perfect matching weights from one determinant per component
// of the edges lying in some perfect matching, each entry carrying
// +-y^(w - component minimum) by orientation.
WeightCountPolynomial count_by_weight(const BipartiteGraph& g, const WeightAssignment& w,
                                      const RotationSystem& rotation);
mpz_class total_count(const WeightCountPolynomial& p);

struct PlanarRoundRecord {
  std::size_t index = 0;
  EdgeSet edges;  // G_i as edge ids of G_0
  std::uint64_t modulus = 0;
  std::vector<std::int64_t> weights;  // on every edge of G_0
  Weight min_weight;
  mpz_class min_count;  // minimum-weight matchings of G_i
};

struct PlanarRoundsResult {
  MatchingSet matching;
  std::vector<PlanarRoundRecord> rounds;
  EdgeSet final_edges;
  CombinedWeight weight;
};

// Round i picks w_i as in run_rounds_adaptive and keeps exactly the edges
// whose deletion lowers the number of minimum-weight matchings of G_i.
PlanarRoundsResult run_planar_rounds(const BipartiteGraph& g, const RotationSystem& rotation,
                                     std::size_t workers = 0);

}  // namespace isomatch
