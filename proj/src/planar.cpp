#include "isomatch/planar.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "isomatch/errors.hpp"
#include "isomatch/generators.hpp"
#include "isomatch/oracle.hpp"
#include "isomatch/parallel.hpp"
#include "isomatch/polynomial.hpp"
#include "isomatch/rounds.hpp"

namespace isomatch {

namespace {

VertexId dart_tail(const BipartiteGraph& g, DartId d) {
  return d % 2 == 0 ? g.left_end(d / 2) : g.right_end(d / 2);
}

VertexId dart_head(const BipartiteGraph& g, DartId d) {
  return d % 2 == 0 ? g.right_end(d / 2) : g.left_end(d / 2);
}

DartId dart_from(const BipartiteGraph& g, EdgeId e, VertexId tail) {
  return g.left_end(e) == tail ? 2 * e : 2 * e + 1;
}

bool dart_agrees(const PlanarEmbedding& emb, DartId d) {
  return (d % 2 == 0) == (emb.left_to_right[d / 2] != 0);
}

std::vector<std::size_t> vertex_components(const BipartiteGraph& g, std::size_t& count) {
  std::vector<std::size_t> comp(g.vertex_count(), kNone);
  count = 0;
  for (VertexId root = 0; root < g.vertex_count(); ++root) {
    if (comp[root] != kNone) continue;
    std::deque<VertexId> queue{root};
    comp[root] = count;
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      for (EdgeId e : g.incident(v)) {
        VertexId u = g.other_end(e, v);
        if (comp[u] == kNone) {
          comp[u] = count;
          queue.push_back(u);
        }
      }
    }
    ++count;
  }
  return comp;
}

}  // namespace

PlanarEmbedding trace_faces(const BipartiteGraph& g, const RotationSystem& rotation) {
  if (rotation.size() != g.vertex_count()) {
    throw InvalidInput("rotation system must list every vertex");
  }
  const std::size_t m = g.edge_count();
  // Position of each endpoint inside the other endpoint's rotation.
  std::vector<std::size_t> at_left(m, kNone), at_right(m, kNone);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (rotation[v].size() != g.degree(v)) {
      throw InvalidInput("rotation of " + g.vertex_name(v) + " does not list its neighbors");
    }
    for (std::size_t i = 0; i < rotation[v].size(); ++i) {
      VertexId u = rotation[v][i];
      auto e = u < g.vertex_count() ? g.find_edge_between(v, u) : std::nullopt;
      if (!e) throw InvalidInput("rotation of " + g.vertex_name(v) + " names a non-neighbor");
      std::size_t& slot = g.is_left(v) ? at_left[*e] : at_right[*e];
      if (slot != kNone) {
        throw InvalidInput("rotation of " + g.vertex_name(v) + " repeats a neighbor");
      }
      slot = i;
    }
  }

  PlanarEmbedding emb;
  emb.graph = g;
  emb.rotation = rotation;
  emb.component = vertex_components(g, emb.component_count);

  auto next = [&](DartId d) {
    VertexId v = dart_head(g, d);
    std::size_t i = g.is_left(v) ? at_left[d / 2] : at_right[d / 2];
    VertexId w = rotation[v][(i + 1) % rotation[v].size()];
    return dart_from(g, *g.find_edge_between(v, w), v);
  };
  std::vector<char> seen(2 * m, 0);
  for (DartId start = 0; start < 2 * m; ++start) {
    if (seen[start]) continue;
    std::vector<DartId> face;
    for (DartId d = start; !seen[d]; d = next(d)) {
      seen[d] = 1;
      face.push_back(d);
    }
    emb.face_component.push_back(emb.component[dart_tail(g, start)]);
    emb.faces.push_back(std::move(face));
  }

  const std::size_t c = emb.component_count;
  std::vector<long> vertices(c, 0), edges(c, 0), faces(c, 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) ++vertices[emb.component[v]];
  for (EdgeId e = 0; e < m; ++e) ++edges[emb.component[g.left_end(e)]];
  for (std::size_t f = 0; f < emb.faces.size(); ++f) ++faces[emb.face_component[f]];
  for (std::size_t i = 0; i < c; ++i) {
    if (edges[i] == 0) continue;
    if (vertices[i] - edges[i] + faces[i] != 2) {
      throw InvalidInput("rotation system is not a planar embedding (V - E + F = " +
                         std::to_string(vertices[i] - edges[i] + faces[i]) + ")");
    }
  }

  emb.outer.assign(emb.faces.size(), 0);
  std::vector<std::size_t> longest(c, kNone);
  for (std::size_t f = 0; f < emb.faces.size(); ++f) {
    std::size_t& best = longest[emb.face_component[f]];
    if (best == kNone || emb.faces[f].size() > emb.faces[best].size()) best = f;
  }
  for (std::size_t f : longest) {
    if (f != kNone) emb.outer[f] = 1;
  }
  return emb;
}

void validate_rotation(const BipartiteGraph& g, const RotationSystem& rotation) {
  (void)trace_faces(g, rotation);
}

PlanarEmbedding pfaffian_orient(const BipartiteGraph& g, const RotationSystem& rotation) {
  PlanarEmbedding emb = trace_faces(g, rotation);
  const std::size_t m = g.edge_count();
  emb.left_to_right.assign(m, 1);
  std::vector<char> fixed(m, 0);

  std::vector<char> reached(g.vertex_count(), 0);
  for (VertexId root = 0; root < g.vertex_count(); ++root) {
    if (reached[root]) continue;
    reached[root] = 1;
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      for (EdgeId e : g.incident(v)) {
        VertexId u = g.other_end(e, v);
        if (reached[u]) continue;
        reached[u] = 1;
        fixed[e] = 1;
        queue.push_back(u);
      }
    }
  }

  std::vector<std::size_t> face_of(2 * m);
  for (std::size_t f = 0; f < emb.faces.size(); ++f) {
    for (DartId d : emb.faces[f]) face_of[d] = f;
  }
  std::vector<std::size_t> pending(emb.faces.size(), 0);
  for (EdgeId e = 0; e < m; ++e) {
    if (fixed[e]) continue;
    if (face_of[2 * e] == face_of[2 * e + 1]) {
      throw InvariantViolation("edge outside the spanning forest borders a single face");
    }
    ++pending[face_of[2 * e]];
    ++pending[face_of[2 * e + 1]];
  }
  std::deque<std::size_t> leaves;
  for (std::size_t f = 0; f < emb.faces.size(); ++f) {
    if (!emb.outer[f] && pending[f] == 1) leaves.push_back(f);
  }
  while (!leaves.empty()) {
    std::size_t f = leaves.front();
    leaves.pop_front();
    if (pending[f] != 1) continue;
    DartId open = kNone;
    std::size_t agree = 0;
    for (DartId d : emb.faces[f]) {
      if (!fixed[d / 2]) {
        open = d;
      } else if (dart_agrees(emb, d)) {
        ++agree;
      }
    }
    // The open dart must agree exactly when the rest is even.
    bool want_agree = agree % 2 == 0;
    emb.left_to_right[open / 2] = (open % 2 == 0) == want_agree;
    fixed[open / 2] = 1;
    pending[f] = 0;
    std::size_t other = face_of[open ^ 1];
    if (--pending[other] == 1 && !emb.outer[other]) leaves.push_back(other);
  }
  if (std::find(fixed.begin(), fixed.end(), 0) != fixed.end()) {
    throw InvariantViolation("dual tree peeling left edges unoriented");
  }
  return emb;
}

std::size_t agreeing_darts(const PlanarEmbedding& emb, std::size_t face) {
  if (emb.left_to_right.size() != emb.graph.edge_count()) {
    throw InvalidInput("embedding carries no orientation");
  }
  std::size_t agree = 0;
  for (DartId d : emb.faces.at(face)) agree += dart_agrees(emb, d) ? 1 : 0;
  return agree;
}

bool is_pfaffian(const PlanarEmbedding& emb) {
  if (emb.left_to_right.size() != emb.graph.edge_count()) return false;
  for (std::size_t f = 0; f < emb.faces.size(); ++f) {
    if (!emb.outer[f] && agreeing_darts(emb, f) % 2 == 0) return false;
  }
  return true;
}

WeightCountPolynomial count_by_weight(const BipartiteGraph& g, const WeightAssignment& w,
                                      const RotationSystem& rotation) {
  validate_rotation(g, rotation);
  if (w.size() != g.edge_count()) throw InvalidInput("weights do not match graph");
  WeightCountPolynomial out;
  if (!g.is_balanced() || !has_perfect_matching(g)) return out;

  auto in_pm = edges_in_some_pm(g);
  EdgeSet keep;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (in_pm[e]) keep.push_back(e);
  }
  const BipartiteGraph sub = g.edge_subgraph(keep);
  const WeightAssignment sw = w.restrict_to(keep);
  const PlanarEmbedding emb = pfaffian_orient(sub, restrict_rotation(g, rotation, keep));
  if (!is_pfaffian(emb)) throw InvariantViolation("orientation fails the face parity check");

  // Local row/column index of each vertex inside its component.
  std::vector<std::size_t> local(sub.vertex_count(), 0);
  std::vector<std::size_t> lefts(emb.component_count, 0), rights(emb.component_count, 0);
  for (VertexId v = 0; v < sub.vertex_count(); ++v) {
    std::size_t c = emb.component[v];
    local[v] = sub.is_left(v) ? lefts[c]++ : rights[c]++;
  }
  std::vector<std::vector<EdgeId>> comp_edges(emb.component_count);
  for (EdgeId e = 0; e < sub.edge_count(); ++e) {
    comp_edges[emb.component[sub.left_end(e)]].push_back(e);
  }

  Poly product = Poly::constant(1);
  Weight shift = 0;
  for (std::size_t c = 0; c < emb.component_count; ++c) {
    if (lefts[c] != rights[c]) throw InvariantViolation("unbalanced matching-covered component");
    if (comp_edges[c].empty()) continue;
    Weight lo = sw[comp_edges[c][0]], hi = lo;
    for (EdgeId e : comp_edges[c]) {
      lo = std::min(lo, sw[e]);
      hi = std::max(hi, sw[e]);
    }
    const Weight span = (hi - lo) * static_cast<unsigned long>(lefts[c]);
    if (span > static_cast<unsigned long>(kMaxCountDegree)) {
      throw InvalidInput("degree bound exceeded: " + span.get_str() + " > " +
                         std::to_string(kMaxCountDegree));
    }
    std::vector<std::vector<Poly>> a(lefts[c], std::vector<Poly>(lefts[c]));
    for (EdgeId e : comp_edges[c]) {
      Weight exp = sw[e] - lo;
      a[local[sub.left_end(e)]][local[sub.right_end(e)]] =
          Poly::monomial(emb.left_to_right[e] ? 1 : -1, exp.get_ui());
    }
    Poly det = poly_determinant(std::move(a));
    if (det.is_zero()) throw InvariantViolation("matching-covered component has zero determinant");
    int sign = 0;
    for (const auto& x : det.coeffs()) {
      int sx = sgn(x);
      if (sx == 0) continue;
      if (sign == 0) sign = sx;
      if (sx != sign) throw InvariantViolation("determinant terms disagree in sign");
    }
    product = product * (sign < 0 ? -det : det);
    shift += lo * static_cast<unsigned long>(lefts[c]);
  }
  for (std::size_t i = 0; i < product.coeffs().size(); ++i) {
    if (product.coeffs()[i] != 0) {
      out.emplace(shift + static_cast<unsigned long>(i), product.coeffs()[i]);
    }
  }
  return out;
}

mpz_class total_count(const WeightCountPolynomial& p) {
  mpz_class sum = 0;
  for (const auto& [weight, count] : p) sum += count;
  return sum;
}

PlanarRoundsResult run_planar_rounds(const BipartiteGraph& g, const RotationSystem& rotation,
                                     std::size_t workers) {
  validate_rotation(g, rotation);
  if (!g.is_balanced() || !has_perfect_matching(g)) {
    throw NoPerfectMatching("graph has no perfect matching");
  }
  const std::size_t n = g.vertex_count();
  PlanarRoundsResult res;
  if (n == 0) {
    res.matching = MatchingSet(g, {});
    return res;
  }
  const std::size_t k = round_count(n);
  if (n > 50'000) throw InvalidInput("graph too large");
  const std::uint64_t nn = n;
  const std::uint64_t t = family_bound(nn, nn * nn * nn * nn);

  EdgeSet current = g.all_edges();
  std::vector<WeightAssignment> round_weights;
  for (std::size_t i = 0; i < k; ++i) {
    PlanarRoundRecord rec;
    rec.index = i;
    rec.edges = current;
    auto screened = screen_round(g, current, cycle_threshold(i, n), t);
    rec.modulus = screened.modulus;
    rec.weights = std::move(screened.weights);
    WeightAssignment wi = WeightAssignment::from_ints(rec.weights);

    const auto base = count_by_weight(g.edge_subgraph(current), wi.restrict_to(current),
                                      restrict_rotation(g, rotation, current));
    if (base.empty()) throw InvariantViolation("round graph lost its perfect matchings");
    rec.min_weight = base.begin()->first;
    rec.min_count = base.begin()->second;

    std::vector<char> keep(current.size(), 0);
    parallel_for(
        current.size(),
        [&](std::size_t j) {
          EdgeSet without;
          for (std::size_t x = 0; x < current.size(); ++x) {
            if (x != j) without.push_back(current[x]);
          }
          auto counts = count_by_weight(g.edge_subgraph(without), wi.restrict_to(without),
                                        restrict_rotation(g, rotation, without));
          mpz_class c = 0;
          if (!counts.empty()) {
            if (counts.begin()->first < rec.min_weight) {
              throw InvariantViolation("deleting an edge lowered the minimum weight");
            }
            if (counts.begin()->first == rec.min_weight) c = counts.begin()->second;
          }
          if (c > rec.min_count) throw InvariantViolation("deleting an edge raised the count");
          keep[j] = c < rec.min_count;
        },
        workers);
    EdgeSet next;
    for (std::size_t j = 0; j < current.size(); ++j) {
      if (keep[j]) next.push_back(current[j]);
    }
    current = std::move(next);
    round_weights.push_back(std::move(wi));
    res.rounds.push_back(std::move(rec));
  }
  res.final_edges = current;
  res.matching = MatchingSet(g, current);
  if (!res.matching.is_perfect()) {
    throw InvariantViolation("final planar round graph is not a single perfect matching");
  }
  res.weight = combine(round_weights, n / 2);
  return res;
}

}  // namespace isomatch
