#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>

#include "isomatch/graph.hpp"
#include "isomatch/isolation.hpp"

namespace isomatch {

// stacked = given * scale + iso.combined, scale = 1 + (n/2) * max iso weight.
struct ScaledWeight {
  WeightAssignment given;
  CombinedWeight iso;
  Weight scale;
  WeightAssignment stacked;
};

ScaledWeight stack_weights(const BipartiteGraph& g, const WeightAssignment& given,
                           const CombinedWeight& iso);

// Largest stacked weight handed to the determinant extractor; above it the
// forced-minimum union is used instead.
inline constexpr unsigned long kStackedMvvCap = 4096;

struct WeightedMatching {
  MatchingSet matching;
  Weight given_weight;
  ScaledWeight weights;
  EdgeSet given_union;  // edges of some matching of minimum given weight
  std::string method;   // "mvv" or "forced-union"
};

// Perfect matching of minimum given weight. The round scheme runs on the
// union of minimum-given-weight matchings, so the stacked weight isolates
// and its unique minimum is read off. Verified against the Hungarian optimum.
WeightedMatching min_weight_pm(const BipartiteGraph& g, const WeightAssignment& given,
                               std::size_t workers = 0);

struct PaddedGraph {
  BipartiteGraph graph;
  WeightAssignment weights;   // 0 on real edges and dummy pairs, 1 between real and dummy
  std::size_t real_edges = 0;  // edges 0..real_edges-1 are the original edges
};

// Adds num_right dummy left vertices joined to every right vertex, num_left
// dummy right vertices joined to every left vertex, and dummy pairs
// (dummy left i, dummy right i). A perfect matching using k real edges
// weighs num_left + num_right - 2k.
PaddedGraph pad_for_maximum(const BipartiteGraph& g);

MatchingSet maximum_matching(const BipartiteGraph& g, std::size_t workers = 0);

}  // namespace isomatch
