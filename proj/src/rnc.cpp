#include "isomatch/rnc.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "isomatch/errors.hpp"
#include "isomatch/isolation.hpp"
#include "isomatch/matrix.hpp"
#include "isomatch/oracle.hpp"
#include "isomatch/parallel.hpp"
#include "isomatch/rounds.hpp"

namespace isomatch {

namespace {

std::uint64_t checked_power(std::uint64_t base, unsigned exp, const char* what) {
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < exp; ++i) {
    acc *= base;
    if (acc >= fp::kP) throw InvalidInput(std::string(what) + " does not fit below 2^61 - 1");
  }
  return static_cast<std::uint64_t>(acc);
}

void check_weights(const BipartiteGraph& g, const RoundWeights& weights) {
  for (const auto& w : weights) {
    if (w.size() != g.edge_count()) throw InvalidInput("round weights do not match graph");
    for (auto x : w) {
      if (x < 0) throw InvalidInput("round weights must be nonnegative");
    }
  }
}

// Univariate view of a coefficient query: edge e contributes c(e) x^a(e).
struct Univariate {
  BipartiteGraph graph;  // the active edges only
  std::vector<std::int64_t> exponent;
  std::vector<std::uint64_t> scale;
};

Univariate univariate(const BipartiteGraph& g, const RoundWeights& weights,
                      std::span<const EdgeId> active, std::size_t r,
                      std::span<const std::uint64_t> values) {
  if (r >= weights.size()) throw InvalidInput("round index out of range");
  if (values.size() < weights.size()) throw InvalidInput("too few evaluation values");
  EdgeSet sorted(active.begin(), active.end());
  std::sort(sorted.begin(), sorted.end());
  Univariate u{g.edge_subgraph(sorted), {}, {}};
  for (EdgeId e : sorted) {
    u.exponent.push_back(weights[r][e]);
    std::uint64_t c = 1;
    for (std::size_t i = r + 1; i < weights.size(); ++i) {
      c = fp::mul(c, fp::pow(values[i], static_cast<std::uint64_t>(weights[i][e])));
    }
    u.scale.push_back(c);
  }
  return u;
}

std::uint64_t eval_at(const Univariate& u, std::uint64_t x) {
  const std::size_t n = u.graph.num_left();
  ModMatrix a(n, std::vector<std::uint64_t>(n, 0));
  for (EdgeId e = 0; e < u.graph.edge_count(); ++e) {
    a[u.graph.edge(e).left][u.graph.edge(e).right] =
        fp::mul(u.scale[e], fp::pow(x, static_cast<std::uint64_t>(u.exponent[e])));
  }
  return det_mod_p(std::move(a));
}

std::uint64_t coefficient(const Univariate& u, std::int64_t target, std::int64_t degree_cap) {
  const BipartiteGraph& g = u.graph;
  if (!g.is_balanced()) return 0;
  auto low = hungarian_dual(g, u.exponent);
  if (!low) return 0;
  if (target < low->value) return 0;
  const std::size_t n = g.num_left();
  if (target == low->value) {
    // Only tight entries (zero reduced cost) can reach the minimum degree.
    ModMatrix tight(n, std::vector<std::uint64_t>(n, 0));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      std::size_t l = g.edge(e).left, r = g.edge(e).right;
      if (u.exponent[e] - low->row[l] - low->col[r] == 0) tight[l][r] = u.scale[e];
    }
    return det_mod_p(std::move(tight));
  }
  std::vector<std::int64_t> negated(u.exponent.size());
  for (std::size_t i = 0; i < negated.size(); ++i) negated[i] = -u.exponent[i];
  const std::int64_t high = -hungarian_dual(g, negated)->value;
  if (target > high) return 0;
  const std::int64_t span = high - low->value;
  if (span > degree_cap) {
    throw InvalidInput("degree bound exceeded: span " + std::to_string(span) + " > " +
                       std::to_string(degree_cap));
  }
  // det(x) = x^low * q(x) with deg q = span; interpolate q at x = 1..span+1.
  const std::size_t d = static_cast<std::size_t>(span);
  std::vector<std::uint64_t> xs(d + 1), ys(d + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    xs[i] = i + 1;
    ys[i] = fp::mul(eval_at(u, xs[i]),
                    fp::inv(fp::pow(xs[i], static_cast<std::uint64_t>(low->value))));
  }
  // Newton divided differences, then expand to monomial coefficients.
  std::vector<std::uint64_t> dd = ys;
  for (std::size_t level = 1; level <= d; ++level) {
    for (std::size_t i = d; i >= level; --i) {
      dd[i] = fp::mul(fp::sub(dd[i], dd[i - 1]), fp::inv(fp::sub(xs[i], xs[i - level])));
    }
  }
  std::vector<std::uint64_t> poly{dd[d]};
  for (std::size_t i = d; i-- > 0;) {
    std::vector<std::uint64_t> next(poly.size() + 1, 0);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] = fp::add(next[j + 1], poly[j]);
      next[j] = fp::sub(next[j], fp::mul(poly[j], xs[i]));
    }
    next[0] = fp::add(next[0], dd[i]);
    poly = std::move(next);
  }
  std::size_t idx = static_cast<std::size_t>(target - low->value);
  return idx < poly.size() ? poly[idx] : 0;
}

}  // namespace

MonomialMatrix build_monomial_matrix(const BipartiteGraph& g, const RoundWeights& weights) {
  if (!g.is_balanced()) throw InvalidInput("monomial matrix needs a balanced graph");
  check_weights(g, weights);
  MonomialMatrix a;
  a.dim = g.num_left();
  a.variables = weights.size();
  a.entries.assign(a.dim, std::vector<std::optional<std::vector<std::int64_t>>>(a.dim));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    std::vector<std::int64_t> exps;
    for (const auto& w : weights) exps.push_back(w[e]);
    a.entries[g.edge(e).left][g.edge(e).right] = std::move(exps);
  }
  return a;
}

std::uint64_t evaluate_determinant(const MonomialMatrix& a, std::span<const std::uint64_t> point) {
  if (point.size() != a.variables) throw InvalidInput("point has the wrong number of variables");
  ModMatrix m(a.dim, std::vector<std::uint64_t>(a.dim, 0));
  for (std::size_t i = 0; i < a.dim; ++i) {
    for (std::size_t j = 0; j < a.dim; ++j) {
      if (!a.entries[i][j]) continue;
      std::uint64_t v = 1;
      for (std::size_t r = 0; r < a.variables; ++r) {
        v = fp::mul(v, fp::pow(point[r], static_cast<std::uint64_t>((*a.entries[i][j])[r])));
      }
      m[i][j] = v;
    }
  }
  return det_mod_p(std::move(m));
}

std::uint64_t budget_limit(std::size_t n) {
  std::uint64_t lg = n <= 1 ? 1 : static_cast<std::uint64_t>(std::bit_width(n - 1));
  return kBudgetConstant * lg * lg;
}

RandomizedDecision decide_randomized(const BipartiteGraph& g, std::uint64_t seed) {
  RandomizedDecision out;
  if (!g.is_balanced()) return out;
  const std::size_t n = g.vertex_count();
  if (n == 0) {
    out.has_pm = true;
    return out;
  }
  const std::size_t k = round_count(n);
  const std::uint64_t s = checked_power(n, 4, "n^4");
  const std::uint64_t range = checked_power(n, 9, "n^9");
  Rng rng(seed);
  RoundWeights weights;
  double degree = 0;
  for (std::size_t r = 0; r < k; ++r) {
    auto pw = random_prime_weights(g.edge_count(), n, s, rng, &out.budget);
    out.primes.push_back(pw.prime);
    degree += static_cast<double>(n / 2) * static_cast<double>(pw.prime - 1);
    weights.push_back(std::move(pw.small));
  }
  for (std::size_t r = 0; r < k; ++r) {
    out.point.push_back(1 + out.budget.draw_below(rng, range, "x_" + std::to_string(r)));
  }
  out.det_residue = evaluate_determinant(build_monomial_matrix(g, weights), out.point);
  out.has_pm = out.det_residue != 0;
  double iso = static_cast<double>(k) / static_cast<double>(n);
  out.error_bound = std::min(1.0, iso + degree / static_cast<double>(range));
  return out;
}

std::uint64_t extract_coefficient(const BipartiteGraph& g, const RoundWeights& weights,
                                  std::span<const EdgeId> edges, EdgeId e, std::size_t r,
                                  std::int64_t target, std::span<const std::uint64_t> values,
                                  std::int64_t degree_cap) {
  check_weights(g, weights);
  if (std::find(edges.begin(), edges.end(), e) == edges.end()) {
    throw InvalidInput("excluded edge is not in the edge set");
  }
  const VertexId a = g.left_end(e), b = g.right_end(e);
  EdgeSet active;
  for (EdgeId f : edges) {
    if (f == e) {
      active.push_back(f);
      continue;
    }
    if (g.left_end(f) == a || g.right_end(f) == b) continue;
    active.push_back(f);
  }
  return coefficient(univariate(g, weights, active, r, values), target, degree_cap);
}

std::uint64_t leading_coefficient(const BipartiteGraph& g, const RoundWeights& weights,
                                  std::span<const EdgeId> edges, std::size_t r,
                                  std::int64_t target, std::span<const std::uint64_t> values) {
  check_weights(g, weights);
  return coefficient(univariate(g, weights, edges, r, values), target, 0);
}

RandomizedSearch search_randomized(const BipartiteGraph& g, std::uint64_t seed,
                                   std::size_t workers) {
  RandomizedSearch out;
  if (!g.is_balanced()) {
    out.failure = "unbalanced graph has no perfect matching";
    return out;
  }
  const std::size_t n = g.vertex_count();
  if (n == 0) {
    out.matching = MatchingSet(g, {});
    return out;
  }
  const std::size_t k = round_count(n);
  const std::uint64_t s = checked_power(n, 4, "n^4");
  const std::uint64_t range = checked_power(n, 11, "n^11");
  Rng rng(seed);
  for (std::size_t r = 0; r < k; ++r) {
    auto pw = random_prime_weights(g.edge_count(), n, s, rng, &out.budget);
    out.primes.push_back(pw.prime);
    out.weights.push_back(std::move(pw.small));
  }
  for (std::size_t r = 0; r < k; ++r) {
    out.point.push_back(1 + out.budget.draw_below(rng, range, "x_" + std::to_string(r)));
  }
  out.chain.push_back(g.all_edges());
  for (std::size_t r = 0; r < k; ++r) {
    const EdgeSet& h = out.chain.back();
    BipartiteGraph hg = g.edge_subgraph(h);
    std::vector<std::int64_t> wr;
    for (EdgeId e : h) wr.push_back(out.weights[r][e]);
    auto low = hungarian_dual(hg, wr);
    if (!low) {
      out.failure = r == 0 ? "graph has no perfect matching"
                           : "H_" + std::to_string(r) + " has no perfect matching";
      return out;
    }
    out.targets.push_back(low->value);
    if (leading_coefficient(g, out.weights, h, r, low->value, out.point) == 0) {
      out.failure = "coefficient of the minimum degree vanished in round " + std::to_string(r);
      return out;
    }
    std::vector<char> keep(h.size(), 0);
    parallel_for(
        h.size(),
        [&](std::size_t i) {
          keep[i] = extract_coefficient(g, out.weights, h, h[i], r, low->value, out.point) != 0;
        },
        workers);
    EdgeSet next;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (keep[i]) next.push_back(h[i]);
    }
    out.chain.push_back(std::move(next));
  }
  MatchingSet m(g, out.chain.back());
  if (m.is_perfect()) {
    out.matching = std::move(m);
  } else {
    out.failure = "final edge set is not a perfect matching";
  }
  return out;
}

}  // namespace isomatch
