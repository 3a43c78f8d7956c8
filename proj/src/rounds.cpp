#include "isomatch/rounds.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "isomatch/errors.hpp"
#include "isomatch/oracle.hpp"

namespace isomatch {

namespace {

mpz_class fourth_power(std::size_t n) {
  mpz_class b = static_cast<unsigned long>(n);
  return b * b * b * b;
}

struct UnionResult {
  EdgeSet edges;
  bool cross_checked = false;
};

UnionResult union_checked(const BipartiteGraph& g, const WeightAssignment& w, bool cross_check,
                          std::size_t workers) {
  UnionResult out;
  out.edges = min_weight_union_edges(g, w, UnionMethod::kForced, workers);
  if (!cross_check) return out;
  EdgeSet other;
  try {
    other = min_weight_union_edges(g, w, UnionMethod::kEnumerate, workers);
  } catch (const OracleScaleError&) {
    return out;
  }
  if (other != out.edges) {
    throw InvariantViolation("forced and enumerated minimum-weight unions differ");
  }
  out.cross_checked = true;
  return out;
}

// Cycles of a subgraph rewritten as edge ids of the parent graph.
std::vector<std::vector<EdgeId>> lift_cycles(const std::vector<Cycle>& cycles,
                                             const EdgeSet& parent_ids) {
  std::vector<std::vector<EdgeId>> out;
  out.reserve(cycles.size());
  for (const auto& c : cycles) {
    std::vector<EdgeId> ids;
    for (EdgeId e : c.edges()) ids.push_back(parent_ids[e]);
    out.push_back(std::move(ids));
  }
  return out;
}

bool all_nonzero(const std::vector<std::vector<EdgeId>>& cycles,
                 const std::vector<std::int64_t>& w) {
  for (const auto& c : cycles) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s += (i % 2 == 0) ? w[c[i]] : -w[c[i]];
    if (s == 0) return false;
  }
  return true;
}

}  // namespace

ScreenResult screen_round(const BipartiteGraph& g, const EdgeSet& current, std::size_t threshold,
                          std::uint64_t t) {
  BipartiteGraph sub = g.edge_subgraph(current);
  std::vector<Cycle> cycles;
  if (threshold >= 4) cycles = enumerate_cycles(sub, threshold);
  auto lifted = lift_cycles(cycles, current);
  ScreenResult out;
  out.cycles = cycles.size();
  for (std::uint64_t j = 2; j <= t; ++j) {
    ++out.tried;
    auto w = exponential_mod(g.edge_count(), j);
    if (all_nonzero(lifted, w)) {
      out.modulus = j;
      out.weights = std::move(w);
      return out;
    }
  }
  throw InvariantViolation("no modulus up to " + std::to_string(t) + " separates " +
                           std::to_string(cycles.size()) + " cycles");
}

std::size_t round_count(std::size_t n) {
  if (n <= 2) return 1;
  std::size_t ceil_log = static_cast<std::size_t>(std::bit_width(n - 1));
  return std::max<std::size_t>(1, ceil_log - 1);
}

std::size_t cycle_threshold(std::size_t round, std::size_t n) {
  if (round + 2 >= 63) return n;
  return std::min<std::size_t>(std::size_t{1} << (round + 2), n);
}

std::size_t doubled_length(std::size_t r) { return r % 2 == 0 ? 2 * r : 2 * r - 2; }

EdgeSet min_weight_union_edges(const BipartiteGraph& g, const WeightAssignment& w,
                               UnionMethod method, std::size_t workers) {
  if (w.size() != g.edge_count()) throw InvalidInput("weight assignment does not match graph");
  EdgeSet out;
  if (method == UnionMethod::kEnumerate) {
    auto res = min_weight_pms(g, w);
    if (res.matchings.empty()) throw NoPerfectMatching("graph has no perfect matching");
    std::vector<char> in(g.edge_count(), 0);
    for (const auto& m : res.matchings) {
      for (EdgeId e : m.edges()) in[e] = 1;
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (in[e]) out.push_back(e);
    }
    return out;
  }
  auto best = hungarian(g, w);
  if (!best) throw NoPerfectMatching("graph has no perfect matching");
  auto forced = forced_min_weights(g, w, workers);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (forced[e] && *forced[e] == best->first) out.push_back(e);
  }
  return out;
}

EdgeSet min_weight_union_edges(const BipartiteGraph& g, const WeightAssignment& w) {
  return union_checked(g, w, true, 0).edges;
}

BipartiteGraph min_weight_union(const BipartiteGraph& g, const WeightAssignment& w) {
  return g.edge_subgraph(min_weight_union_edges(g, w));
}

VanishReport verify_cycles_vanish(const BipartiteGraph& g, const WeightAssignment& w) {
  VanishReport rep;
  EdgeSet u = min_weight_union_edges(g, w, UnionMethod::kEnumerate);
  std::vector<char> in(g.edge_count(), 0);
  for (EdgeId e : u) in[e] = 1;
  for (const auto& c : enumerate_cycles(g, g.vertex_count())) {
    ++rep.cycles;
    if (circulation(w, c) == 0) continue;
    ++rep.nonzero;
    bool inside = std::all_of(c.edges().begin(), c.edges().end(), [&](EdgeId e) { return in[e]; });
    if (inside) rep.violations.push_back(c);
  }
  return rep;
}

EqualWeightReport verify_equal_weights(const BipartiteGraph& g, const WeightAssignment& w) {
  EqualWeightReport rep;
  auto res = min_weight_pms(g, w);
  if (res.matchings.empty()) throw NoPerfectMatching("graph has no perfect matching");
  rep.min_weight = res.min_weight;
  EdgeSet u = min_weight_union_edges(g, w, UnionMethod::kEnumerate);
  BipartiteGraph g1 = g.edge_subgraph(u);
  WeightAssignment w1 = w.restrict_to(u);
  for (const auto& m : enumerate_pms(g1)) {
    ++rep.union_pms;
    if (w1.total(m.edges()) != *rep.min_weight) ++rep.violations;
  }
  return rep;
}

CycleBoundReport verify_cycle_bound(const BipartiteGraph& g, std::size_t r) {
  if (r < 1) throw InvalidInput("r must be at least 1");
  CycleBoundReport rep;
  rep.r = r;
  rep.r_prime = doubled_length(r);
  rep.odd_branch = r % 2 == 1;
  rep.bound = fourth_power(g.vertex_count());
  if (!girth_at_least(g, r)) {
    rep.skipped = true;
    return rep;
  }
  rep.cycles = count_cycles(g, rep.r_prime);
  return rep;
}

AdaptiveResult run_rounds_adaptive(const BipartiteGraph& g, const AdaptiveOptions& options) {
  if (!has_perfect_matching(g)) throw NoPerfectMatching("graph has no perfect matching");
  const std::size_t n = g.vertex_count();
  AdaptiveResult res;
  RoundTrace& trace = res.trace;
  trace.n = n;
  trace.k = round_count(n);
  const mpz_class s_big = fourth_power(n);
  if (!s_big.fits_ulong_p()) throw InvalidInput("graph too large");
  trace.s = s_big.get_ui();
  trace.t = family_bound(n, trace.s);

  EdgeSet current = g.all_edges();
  std::vector<WeightAssignment> round_weights;
  for (std::size_t i = 0; i < trace.k; ++i) {
    RoundRecord rec;
    rec.index = i;
    rec.edges = current;
    BipartiteGraph gi = g.edge_subgraph(current);
    // Round 0 starts from bipartiteness alone (no cycle of length <= 3);
    // later rounds inherit no cycle of length <= 2^(i+1) from the previous one.
    rec.girth_bound = i == 0 ? 3 : (std::size_t{1} << (i + 1));
    rec.r_prime = doubled_length(rec.girth_bound);
    rec.odd_branch = rec.girth_bound % 2 == 1;
    rec.girth_ok = girth_at_least(gi, rec.girth_bound);
    rec.threshold = cycle_threshold(i, n);
    auto screened = screen_round(g, current, rec.threshold, trace.t);
    rec.short_cycles = screened.cycles;
    rec.cycle_bound_ok = mpz_class(static_cast<unsigned long>(screened.cycles)) <= s_big;
    rec.candidates_tried = screened.tried;
    rec.modulus = screened.modulus;
    rec.weights = std::move(screened.weights);
    WeightAssignment wi = WeightAssignment::from_ints(rec.weights);
    auto u = union_checked(gi, wi.restrict_to(current), options.cross_check, options.workers);
    rec.union_cross_checked = u.cross_checked;
    EdgeSet next;
    for (EdgeId e : u.edges) next.push_back(current[e]);
    if (next.size() < current.size()) ++trace.effective_rounds;
    current = std::move(next);
    round_weights.push_back(std::move(wi));
    trace.rounds.push_back(std::move(rec));
  }
  trace.final_edges = current;
  res.matching = MatchingSet(g, current);
  if (!res.matching.is_perfect()) {
    throw InvariantViolation("final round graph is not a single perfect matching");
  }
  res.weight = combine(round_weights, n / 2);
  EdgeSet check = union_checked(g, res.weight.combined, options.cross_check, options.workers).edges;
  res.isolating = check == res.matching.edges();
  return res;
}

ObliviousResult run_rounds_oblivious(const BipartiteGraph& g, std::uint64_t max_tries) {
  if (g.num_left() > 4 || g.num_right() > 4) {
    throw InvalidInput("oblivious product search is limited to 4 vertices per side");
  }
  ObliviousResult res;
  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();
  const std::size_t k = round_count(std::max<std::size_t>(n, 1));
  const std::uint64_t t = family_bound(std::max<std::size_t>(n, 1),
                                       fourth_power(std::max<std::size_t>(n, 1)).get_ui());
  auto build = [&](const std::vector<std::uint64_t>& moduli) {
    std::vector<WeightAssignment> rounds;
    for (auto j : moduli) rounds.push_back(WeightAssignment::from_ints(exponential_mod(m, j)));
    return combine(rounds, n / 2);
  };
  const auto pms = enumerate_pms(g);
  if (pms.empty()) {
    res.found = true;
    res.vacuous = true;
    res.moduli.assign(k, 2);
    res.weight = build(res.moduli);
    res.tried = 1;
    return res;
  }
  // Per modulus: each matching's weight and the largest edge weight.
  struct Column {
    std::vector<std::int64_t> pm_weight;
    std::int64_t max_edge = 0;
  };
  std::map<std::uint64_t, Column> cache;
  auto column = [&](std::uint64_t j) -> const Column& {
    auto it = cache.find(j);
    if (it != cache.end()) return it->second;
    Column c;
    auto w = exponential_mod(m, j);
    for (auto x : w) c.max_edge = std::max(c.max_edge, x);
    for (const auto& pm : pms) {
      std::int64_t s = 0;
      for (EdgeId e : pm.edges()) s += w[e];
      c.pm_weight.push_back(s);
    }
    return cache.emplace(j, std::move(c)).first->second;
  };
  const __int128 half = static_cast<__int128>(n / 2);
  std::vector<std::uint64_t> tuple(k);
  for (std::uint64_t top = 2; top <= t; ++top) {
    // Every tuple over [2, top]^k whose largest entry is top, lexicographically.
    std::fill(tuple.begin(), tuple.end(), 2);
    for (;;) {
      if (*std::max_element(tuple.begin(), tuple.end()) == top) {
        if (++res.tried > max_tries) return res;
        __int128 base_minus_one = 0;
        for (auto j : tuple) base_minus_one = std::max<__int128>(base_minus_one, column(j).max_edge);
        const __int128 base = 1 + std::max<__int128>(1, half) * base_minus_one;
        __int128 best = -1;
        std::size_t ties = 0;
        for (std::size_t p = 0; p < pms.size(); ++p) {
          __int128 acc = 0;
          for (auto j : tuple) acc = acc * base + column(j).pm_weight[p];
          if (best < 0 || acc < best) {
            best = acc;
            ties = 1;
          } else if (acc == best) {
            ++ties;
          }
        }
        if (ties == 1) {
          res.found = true;
          res.moduli = tuple;
          res.weight = build(tuple);
          if (!is_isolating(pms, res.weight->combined)) {
            throw InvariantViolation("oblivious search disagrees with the oracle");
          }
          return res;
        }
      }
      std::size_t pos = k;
      while (pos > 0 && tuple[pos - 1] == top) {
        tuple[pos - 1] = 2;
        --pos;
      }
      if (pos == 0) break;
      ++tuple[pos - 1];
    }
  }
  return res;
}

}  // namespace isomatch
