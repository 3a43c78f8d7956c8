#include "isomatch/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <queue>
#include <type_traits>

#include "isomatch/errors.hpp"
#include "isomatch/parallel.hpp"

namespace isomatch {

namespace {

std::mutex limits_mutex;

OracleLimits initial_limits() {
  OracleLimits limits;
  if (const char* env = std::getenv("ISOMATCH_ORACLE_LIMIT")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 4) limits.max_vertices = v;
  }
  return limits;
}

OracleLimits& current_limits() {
  static OracleLimits limits = initial_limits();
  return limits;
}

struct Enumerator {
  const BipartiteGraph& g;
  const OracleLimits& limits;
  std::vector<char> used_right;
  EdgeSet chosen;
  std::vector<MatchingSet> out;
  std::uint64_t nodes = 0;

  void run(std::size_t left) {
    if (++nodes > limits.max_nodes) {
      throw OracleScaleError("matching enumeration exceeded " + std::to_string(limits.max_nodes) +
                             " search nodes");
    }
    if (left == g.num_left()) {
      out.emplace_back(g, chosen);
      return;
    }
    for (EdgeId e : g.incident(g.left_vertex(left))) {
      std::size_t r = g.edge(e).right;
      if (used_right[r]) continue;
      used_right[r] = 1;
      chosen.push_back(e);
      run(left + 1);
      chosen.pop_back();
      used_right[r] = 0;
    }
  }
};

// Row i lists (column, cost, edge) for the square problem of size n.
template <typename T>
struct CostRow {
  std::size_t col;
  T cost;
  EdgeId edge;
};

// Shortest-augmenting-path assignment with potentials. Returns the edge
// assigned to each row, or nullopt when no perfect assignment exists.
template <typename T>
std::optional<std::pair<T, EdgeSet>> hungarian_core(std::size_t n,
                                                    const std::vector<std::vector<CostRow<T>>>& rows,
                                                    std::vector<T>* row_pot = nullptr,
                                                    std::vector<T>* col_pot = nullptr) {
  if (n == 0) return std::make_pair(T(0), EdgeSet{});
  // 1-based rows and columns; column 0 is a sentinel.
  std::vector<T> u(n + 1, T(0)), v(n + 1, T(0)), minv(n + 1, T(0));
  std::vector<char> finite(n + 1), used(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(finite.begin(), finite.end(), 0);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      bool have_delta = false;
      T delta(0);
      std::size_t j1 = 0;
      for (const auto& cell : rows[i0 - 1]) {
        std::size_t j = cell.col + 1;
        if (used[j]) continue;
        T cur = cell.cost - u[i0] - v[j];
        if (!finite[j] || cur < minv[j]) {
          minv[j] = cur;
          finite[j] = 1;
          way[j] = j0;
        }
      }
      for (std::size_t j = 1; j <= n; ++j) {
        if (!used[j] && finite[j] && (!have_delta || minv[j] < delta)) {
          delta = minv[j];
          have_delta = true;
          j1 = j;
        }
      }
      if (!have_delta) return std::nullopt;
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else if (finite[j]) {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  EdgeSet edges;
  T total(0);
  for (std::size_t j = 1; j <= n; ++j) {
    T best(0);
    EdgeId pick = kNone;
    for (const auto& cell : rows[p[j] - 1]) {
      if (cell.col + 1 == j && (pick == kNone || cell.cost < best)) {
        best = cell.cost;
        pick = cell.edge;
      }
    }
    if (pick == kNone) throw InvariantViolation("assignment used a missing edge");
    edges.push_back(pick);
    total += best;
  }
  std::sort(edges.begin(), edges.end());
  if (row_pot) row_pot->assign(u.begin() + 1, u.end());
  if (col_pot) col_pot->assign(v.begin() + 1, v.end());
  return std::make_pair(total, edges);
}

// Rows of g with the given left row and right column removed (kNone keeps
// everything); remaining indices are compacted.
template <typename T>
std::vector<std::vector<CostRow<T>>> cost_rows(const BipartiteGraph& g, const std::vector<T>& w,
                                               std::size_t skip_left = kNone,
                                               std::size_t skip_right = kNone) {
  std::vector<std::vector<CostRow<T>>> rows;
  for (std::size_t i = 0; i < g.num_left(); ++i) {
    if (i == skip_left) continue;
    std::vector<CostRow<T>> row;
    for (EdgeId e : g.incident(g.left_vertex(i))) {
      std::size_t j = g.edge(e).right;
      if (j == skip_right) continue;
      row.push_back({skip_right != kNone && j > skip_right ? j - 1 : j, w[e], e});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
std::optional<std::pair<T, EdgeSet>> hungarian_impl(const BipartiteGraph& g,
                                                    const std::vector<T>& w) {
  if (!g.is_balanced()) return std::nullopt;
  return hungarian_core<T>(g.num_left(), cost_rows<T>(g, w));
}

template <typename T>
std::vector<std::optional<Weight>> forced_impl(const BipartiteGraph& g, const std::vector<T>& w,
                                               std::size_t workers) {
  std::vector<std::optional<Weight>> out(g.edge_count());
  if (!g.is_balanced()) return out;
  parallel_for(
      g.edge_count(),
      [&](std::size_t e) {
        auto rows = cost_rows<T>(g, w, g.edge(e).left, g.edge(e).right);
        auto r = hungarian_core<T>(g.num_left() - 1, rows);
        if (!r) return;
        T total = r->first + w[e];
        if constexpr (std::is_same_v<T, Weight>) {
          out[e] = total;
        } else {
          out[e] = Weight(static_cast<long>(total));
        }
      },
      workers);
  return out;
}

}  // namespace

OracleLimits default_oracle_limits() {
  std::lock_guard lock(limits_mutex);
  return current_limits();
}

void set_default_oracle_limits(const OracleLimits& limits) {
  std::lock_guard lock(limits_mutex);
  current_limits() = limits;
}

std::vector<MatchingSet> enumerate_pms(const BipartiteGraph& g, const OracleLimits& limits) {
  if (g.vertex_count() > limits.max_vertices) {
    throw OracleScaleError("graph has " + std::to_string(g.vertex_count()) +
                           " vertices, oracle limit is " + std::to_string(limits.max_vertices));
  }
  if (!g.is_balanced()) return {};
  Enumerator en{g, limits, std::vector<char>(g.num_right(), 0), {}, {}, 0};
  en.run(0);
  return std::move(en.out);
}

MinWeightPms min_weight_pms(const std::vector<MatchingSet>& pms, const WeightAssignment& w) {
  MinWeightPms out;
  for (const auto& m : pms) {
    Weight total = w.total(m.edges());
    if (!out.min_weight || total < *out.min_weight) {
      out.min_weight = total;
      out.matchings.clear();
    }
    if (total == *out.min_weight) out.matchings.push_back(m);
  }
  return out;
}

MinWeightPms min_weight_pms(const BipartiteGraph& g, const WeightAssignment& w,
                            const OracleLimits& limits) {
  if (w.size() != g.edge_count()) throw InvalidInput("weight assignment does not match graph");
  return min_weight_pms(enumerate_pms(g, limits), w);
}

bool is_isolating(const std::vector<MatchingSet>& pms, const WeightAssignment& w) {
  return min_weight_pms(pms, w).matchings.size() <= 1;
}

bool is_isolating(const BipartiteGraph& g, const WeightAssignment& w, const OracleLimits& limits) {
  return min_weight_pms(g, w, limits).matchings.size() <= 1;
}

std::optional<std::pair<Weight, EdgeSet>> hungarian(const BipartiteGraph& g,
                                                    const WeightAssignment& w) {
  if (w.size() != g.edge_count()) throw InvalidInput("weight assignment does not match graph");
  if (auto small = w.as_int64()) {
    auto r = hungarian_impl<std::int64_t>(g, *small);
    if (!r) return std::nullopt;
    return std::make_pair(Weight(static_cast<long>(r->first)), std::move(r->second));
  }
  return hungarian_impl<Weight>(g, w.values());
}

std::optional<std::pair<std::int64_t, EdgeSet>> hungarian(const BipartiteGraph& g,
                                                          std::span<const std::int64_t> w) {
  if (w.size() != g.edge_count()) throw InvalidInput("weight assignment does not match graph");
  return hungarian_impl<std::int64_t>(g, std::vector<std::int64_t>(w.begin(), w.end()));
}

std::optional<AssignmentDual> hungarian_dual(const BipartiteGraph& g,
                                             std::span<const std::int64_t> w) {
  if (w.size() != g.edge_count()) throw InvalidInput("weight assignment does not match graph");
  if (!g.is_balanced()) return std::nullopt;
  AssignmentDual out;
  std::vector<std::int64_t> wv(w.begin(), w.end());
  auto r = hungarian_core<std::int64_t>(g.num_left(), cost_rows<std::int64_t>(g, wv), &out.row,
                                        &out.col);
  if (!r) return std::nullopt;
  out.value = r->first;
  out.edges = std::move(r->second);
  return out;
}

std::vector<std::optional<Weight>> forced_min_weights(const BipartiteGraph& g,
                                                      const WeightAssignment& w,
                                                      std::size_t workers) {
  if (w.size() != g.edge_count()) throw InvalidInput("weight assignment does not match graph");
  if (auto small = w.as_int64()) return forced_impl<std::int64_t>(g, *small, workers);
  return forced_impl<Weight>(g, w.values(), workers);
}

EdgeSet hopcroft_karp(const BipartiteGraph& g) {
  const std::size_t nl = g.num_left(), nr = g.num_right();
  std::vector<EdgeId> mate_left(nl, kNone), mate_right(nr, kNone);
  std::vector<std::size_t> dist(nl);
  constexpr std::size_t kInf = static_cast<std::size_t>(-1);

  auto bfs = [&] {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t i = 0; i < nl; ++i) {
      dist[i] = mate_left[i] == kNone ? 0 : kInf;
      if (dist[i] == 0) q.push(i);
    }
    while (!q.empty()) {
      std::size_t i = q.front();
      q.pop();
      for (EdgeId e : g.incident(g.left_vertex(i))) {
        std::size_t r = g.edge(e).right;
        EdgeId back = mate_right[r];
        if (back == kNone) {
          found = true;
        } else {
          std::size_t i2 = g.edge(back).left;
          if (dist[i2] == kInf) {
            dist[i2] = dist[i] + 1;
            q.push(i2);
          }
        }
      }
    }
    return found;
  };

  // Iterative DFS along the BFS layers.
  std::vector<std::size_t> it(nl);
  auto augment = [&](std::size_t root) {
    std::vector<std::size_t> stack{root};
    std::vector<EdgeId> via;
    while (!stack.empty()) {
      std::size_t i = stack.back();
      auto inc = g.incident(g.left_vertex(i));
      bool advanced = false;
      while (it[i] < inc.size()) {
        EdgeId e = inc[it[i]++];
        std::size_t r = g.edge(e).right;
        EdgeId back = mate_right[r];
        if (back == kNone) {
          via.push_back(e);
          // Flip the path.
          for (std::size_t k = 0; k < via.size(); ++k) {
            EdgeId f = via[k];
            mate_left[g.edge(f).left] = f;
            mate_right[g.edge(f).right] = f;
          }
          return true;
        }
        std::size_t i2 = g.edge(back).left;
        if (dist[i2] == dist[i] + 1) {
          via.push_back(e);
          stack.push_back(i2);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[i] = kInf;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (std::size_t i = 0; i < nl; ++i) {
      if (mate_left[i] == kNone) augment(i);
    }
  }
  EdgeSet out;
  for (std::size_t i = 0; i < nl; ++i) {
    if (mate_left[i] != kNone) out.push_back(mate_left[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool has_perfect_matching(const BipartiteGraph& g) {
  return g.is_balanced() && hopcroft_karp(g).size() == g.num_left();
}

std::vector<char> edges_in_some_pm(const BipartiteGraph& g) {
  std::vector<char> out(g.edge_count(), 0);
  if (!g.is_balanced()) return out;
  EdgeSet m = hopcroft_karp(g);
  if (m.size() != g.num_left()) return out;
  std::vector<EdgeId> mate(g.vertex_count(), kNone);
  for (EdgeId e : m) {
    out[e] = 1;
    mate[g.left_end(e)] = e;
    mate[g.right_end(e)] = e;
  }
  // A non-matching edge l-r lies in some perfect matching iff it closes an
  // alternating cycle: r reaches l by leaving right vertices along their
  // matching edge and left vertices along non-matching edges.
  std::vector<char> seen(g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (out[e]) continue;
    VertexId l = g.left_end(e), r = g.right_end(e);
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<VertexId> stack{r};
    seen[r] = 1;
    bool reached = false;
    while (!stack.empty() && !reached) {
      VertexId x = stack.back();
      stack.pop_back();
      if (!g.is_left(x)) {
        VertexId y = g.other_end(mate[x], x);
        if (y == l) reached = true;
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      } else {
        for (EdgeId f : g.incident(x)) {
          if (f == mate[x]) continue;
          VertexId y = g.other_end(f, x);
          if (!seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
        }
      }
    }
    out[e] = reached;
  }
  return out;
}

int permutation_sign(const BipartiteGraph& g, const MatchingSet& m) {
  const std::size_t n = g.num_left();
  if (!m.is_perfect()) throw InvalidInput("sign needs a perfect matching");
  std::vector<std::size_t> perm(n);
  for (EdgeId e : m.edges()) perm[g.edge(e).left] = g.edge(e).right;
  std::vector<char> seen(n, 0);
  int sign = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

mpz_class signed_power_sum(const BipartiteGraph& g, const WeightAssignment& w,
                           const OracleLimits& limits) {
  if (!w.all_nonnegative()) throw InvalidInput("signed power sum needs nonnegative weights");
  mpz_class sum = 0;
  for (const auto& m : enumerate_pms(g, limits)) {
    Weight total = w.total(m.edges());
    if (!total.fits_ulong_p()) throw InvalidInput("matching weight too large for 2^w");
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), 2, total.get_ui());
    if (permutation_sign(g, m) > 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

FractionalPoint incidence_vector(const BipartiteGraph& g, const MatchingSet& m) {
  FractionalPoint x(g.edge_count(), mpq_class(0));
  for (EdgeId e : m.edges()) x[e] = 1;
  return x;
}

bool polytope_conditions(const BipartiteGraph& g, const FractionalPoint& x) {
  if (x.size() != g.edge_count()) throw InvalidInput("point does not match edge count");
  for (const auto& c : x) {
    if (sgn(c) < 0) return false;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    mpq_class s = 0;
    for (EdgeId e : g.incident(v)) s += x[e];
    if (s != 1) return false;
  }
  return true;
}

namespace {

// Perfect matchings of a general graph given as an edge-bitmask subset.
void general_pms(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                 std::uint32_t edge_mask, std::uint32_t covered, std::uint32_t current,
                 std::vector<std::uint32_t>& out) {
  if (covered == (std::uint32_t{1} << n) - 1) {
    out.push_back(current);
    return;
  }
  std::size_t v = 0;
  while (covered >> v & 1) ++v;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (!(edge_mask >> k & 1)) continue;
    auto [a, b] = edges[k];
    if (a != v && b != v) continue;
    std::size_t u = a == v ? b : a;
    if (covered >> u & 1) continue;
    general_pms(n, edges, edge_mask, covered | (1u << v) | (1u << u), current | (1u << k), out);
  }
}

}  // namespace

std::optional<GeneralGraph> find_nonbipartite_counterexample(std::size_t max_n) {
  if (max_n > 10) throw InvalidInput("counterexample search supports at most 10 vertices");
  for (std::size_t n = 4; n <= max_n; n += 2) {
    std::vector<std::pair<std::size_t, std::size_t>> all;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) all.emplace_back(a, b);
    }
    const std::size_t total = all.size();
    // Subsets by increasing size so the first witness is a smallest one.
    for (std::size_t size = 1; size <= std::min<std::size_t>(total, 16); ++size) {
      std::uint64_t mask = (std::uint64_t{1} << size) - 1;
      const std::uint64_t limit = std::uint64_t{1} << total;
      for (; mask < limit;) {
        std::vector<std::uint32_t> pms;
        general_pms(n, all, static_cast<std::uint32_t>(mask), 0, 0, pms);
        std::uint32_t in_some = 0;
        for (auto pm : pms) in_some |= pm;
        if (pms.size() >= 2 && in_some == mask) {
          std::vector<std::size_t> bits;
          for (std::size_t k = 0; k < total; ++k) {
            if (mask >> k & 1) bits.push_back(k);
          }
          for (std::uint32_t wmask = 0; wmask < (1u << size); ++wmask) {
            // Weight of edge bits[i] is bit i of wmask.
            auto weight_of = [&](std::uint32_t pm) {
              int s = 0;
              for (std::size_t i = 0; i < bits.size(); ++i) {
                if ((pm >> bits[i] & 1) && (wmask >> i & 1)) ++s;
              }
              return s;
            };
            int best = 1 << 30, worst = -1;
            for (auto pm : pms) {
              int s = weight_of(pm);
              best = std::min(best, s);
              worst = std::max(worst, s);
            }
            std::uint32_t union_min = 0;
            for (auto pm : pms) {
              if (weight_of(pm) == best) union_min |= pm;
            }
            if (union_min == mask && worst > best) {
              GeneralGraph out;
              out.n = n;
              for (std::size_t i = 0; i < bits.size(); ++i) {
                out.edges.push_back(all[bits[i]]);
                out.weights.push_back(wmask >> i & 1);
              }
              return out;
            }
          }
        }
        // Next subset of the same size (Gosper).
        std::uint64_t c = mask & (~mask + 1);
        std::uint64_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
      }
    }
  }
  return std::nullopt;
}

}  // namespace isomatch
