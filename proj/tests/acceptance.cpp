// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "isomatch/cycles.hpp"
#include "isomatch/generators.hpp"
#include "isomatch/isolation.hpp"
#include "isomatch/mvv.hpp"
#include "isomatch/oracle.hpp"
#include "isomatch/planar.hpp"
#include "isomatch/random.hpp"
#include "isomatch/rnc.hpp"
#include "isomatch/rounds.hpp"

using namespace isomatch;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail_if(bool bad, const std::string& why) {
    if (bad) {
      if (pass) detail << "first failure: " << why << "; ";
      pass = false;
    }
  }
};

BipartiteGraph random_graph(Rng& rng, std::size_t nl, std::size_t nr, bool planted) {
  double p = 0.25 + 0.6 * rng.uniform01();
  return random_bipartite(nl, nr, p, rng, planted);
}

WeightAssignment random_weights(const BipartiteGraph& g, Rng& rng, std::uint64_t lo,
                                std::uint64_t hi) {
  WeightAssignment w(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    w[e] = Weight(static_cast<unsigned long>(rng.uniform(lo, hi)));
  }
  return w;
}

mpz_class power(std::size_t base, unsigned e) {
  mpz_class r = 1;
  for (unsigned i = 0; i < e; ++i) r *= static_cast<unsigned long>(base);
  return r;
}

std::size_t ceil_log2(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

// Collected by C5 and checked by C10.
std::vector<std::pair<std::size_t, AdaptiveResult>> g_traces;

// C1: uniform weights from {1..2m} isolate with frequency at least 1/2.
void criterion1(Outcome& out) {
  Rng rng(1001);
  std::vector<BipartiteGraph> graphs{complete_bipartite(2, 2), complete_bipartite(3, 3)};
  while (graphs.size() < 22) graphs.push_back(random_bipartite(6, 6, 0.5, rng, true));
  const std::uint64_t trials = 10'000;
  const double slack = 3.0 * std::sqrt(0.25 / static_cast<double>(trials));
  double worst = 1.0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    auto res = isolation_lemma_trial(graphs[i], trials, 5000 + i);
    double f = res.frequency.get_d();
    worst = std::min(worst, f);
    out.fail_if(f < 0.5 - slack, "graph " + std::to_string(i) + " frequency " + std::to_string(f));
  }
  out.detail << graphs.size() << " graphs x " << trials << " draws, min frequency " << worst
             << ", threshold " << 0.5 - slack;
}

// Moduli j in [2, tmax] packed as bits.
using Bits = std::vector<std::uint64_t>;

bool bit(const Bits& b, std::size_t j) { return b[j / 64] >> (j % 64) & 1; }

// Is there a set of at most `depth` cycles whose blocked moduli cover `open`?
bool coverable(const Bits& open, std::size_t depth, const std::vector<Bits>& blocked,
               const std::vector<std::vector<std::size_t>>& blockers, std::size_t tmax) {
  std::size_t pick = 0, fewest = SIZE_MAX;
  for (std::size_t j = 2; j <= tmax; ++j) {
    if (!bit(open, j)) continue;
    if (blockers[j].size() < fewest) {
      fewest = blockers[j].size();
      pick = j;
    }
  }
  if (fewest == SIZE_MAX) return true;
  if (depth == 0 || fewest == 0) return false;
  for (std::size_t c : blockers[pick]) {
    Bits rest = open;
    for (std::size_t w = 0; w < rest.size(); ++w) rest[w] &= ~blocked[c][w];
    if (coverable(rest, depth - 1, blocked, blockers, tmax)) return true;
  }
  return false;
}

// C2: every set of at most 6 cycles has a family member with all
// circulations nonzero. A set fails exactly when each modulus in [2, t]
// gives some member zero circulation, so the check is a cover search.
void criterion2(Outcome& out) {
  Rng rng(1002);
  std::set<std::vector<std::pair<std::size_t, std::size_t>>> seen;
  std::size_t graphs = 0, cyclic = 0, literal_sets = 0, failures = 0;
  while (graphs < 500) {
    std::size_t nl = rng.uniform(1, 5), nr = rng.uniform(1, 5);
    auto g = random_graph(rng, nl, nr, false);
    std::vector<std::pair<std::size_t, std::size_t>> key{{nl, nr}};
    for (EdgeId e = 0; e < g.edge_count(); ++e) key.push_back({g.edge(e).left, g.edge(e).right});
    if (!seen.insert(key).second) continue;
    ++graphs;
    auto cycles = enumerate_cycles(g, g.vertex_count());
    if (cycles.empty()) continue;
    ++cyclic;
    const std::size_t n = g.vertex_count();
    const std::size_t tmax = family_bound(n, 6);
    const std::size_t words = tmax / 64 + 1;
    std::vector<Bits> blocked(cycles.size(), Bits(words, 0));
    std::vector<std::vector<std::size_t>> blockers(tmax + 1);
    for (std::size_t j = 2; j <= tmax; ++j) {
      auto w = exponential_mod(g.edge_count(), j);
      for (std::size_t c = 0; c < cycles.size(); ++c) {
        if (circulation(std::span<const std::int64_t>(w), cycles[c]) == 0) {
          blocked[c][j / 64] |= std::uint64_t{1} << (j % 64);
          blockers[j].push_back(c);
        }
      }
    }
    for (std::size_t s = 1; s <= std::min<std::size_t>(6, cycles.size()); ++s) {
      const std::size_t t = family_bound(n, s);
      Bits open(words, 0);
      for (std::size_t j = 2; j <= t; ++j) open[j / 64] |= std::uint64_t{1} << (j % 64);
      if (coverable(open, s, blocked, blockers, t)) {
        ++failures;
        out.fail_if(true, "graph " + std::to_string(graphs) + " s=" + std::to_string(s));
      }
    }
    // Direct subset checks against the family itself.
    for (int rep = 0; rep < 20; ++rep) {
      std::size_t s = rng.uniform(1, std::min<std::size_t>(6, cycles.size()));
      std::set<std::size_t> pick;
      while (pick.size() < s) pick.insert(rng.uniform(0, cycles.size() - 1));
      bool found = false;
      for (std::uint64_t j = 2; j <= family_bound(n, s) && !found; ++j) {
        auto w = exponential_mod(g.edge_count(), j);
        found = std::all_of(pick.begin(), pick.end(), [&](std::size_t c) {
          return circulation(std::span<const std::int64_t>(w), cycles[c]) != 0;
        });
      }
      ++literal_sets;
      out.fail_if(!found, "direct subset check");
    }
  }
  out.detail << graphs << " graphs (" << cyclic << " with cycles), " << failures
             << " coverable cycle sets, " << literal_sets << " direct subset checks";
}

// C3: the min-weight union has only zero-circulation cycles and all its
// perfect matchings share the minimum weight.
void criterion3(Outcome& out) {
  Rng rng(1003);
  std::size_t cycles = 0, union_pms = 0, tried = 0;
  for (int i = 0; i < 200; ++i) {
    BipartiteGraph g;
    do {
      ++tried;
      std::size_t h = rng.uniform(1, 6);
      g = random_graph(rng, h, h, i % 2 == 0);
    } while (!has_perfect_matching(g));
    auto w = random_weights(g, rng, 0, 1 + i % 6);
    auto vanish = verify_cycles_vanish(g, w);
    auto equal = verify_equal_weights(g, w);
    cycles += vanish.cycles;
    union_pms += equal.union_pms;
    out.fail_if(!vanish.ok(), "nonzero circulation in union, graph " + std::to_string(i));
    out.fail_if(!equal.ok(), "union matching above minimum, graph " + std::to_string(i));
  }
  out.detail << "200 graphs with a perfect matching (" << tried << " drawn), " << cycles
             << " cycles checked, " << union_pms << " union matchings";
}

// C4: with no cycle of length <= r, the cycles of length <= r' number at
// most n^4.
void criterion4(Outcome& out) {
  Rng rng(1004);
  std::size_t checked = 0, skipped = 0;
  std::size_t worst_cycles = 0;
  auto check = [&](const BipartiteGraph& g, std::size_t r) {
    auto rep = verify_cycle_bound(g, r);
    if (rep.skipped) {
      ++skipped;
      return;
    }
    ++checked;
    worst_cycles = std::max(worst_cycles, rep.cycles);
    out.fail_if(!rep.ok(), "r=" + std::to_string(r) + " cycles=" + std::to_string(rep.cycles));
  };
  for (std::size_t gir : {4, 6, 8}) {
    for (int i = 0; i < 40; ++i) {
      std::size_t nl = rng.uniform(2, 10), nr = rng.uniform(2, 20 - nl);
      auto g = random_girth_graph(nl, nr, gir, nl * nr, rng);
      auto actual = girth(g);
      out.fail_if(actual && *actual < gir, "generator produced a short cycle");
      check(g, gir - 1);
      if (gir - 2 >= 3) check(g, gir - 2);
    }
  }
  auto h = heawood_graph();
  check(h, 4);
  check(h, 5);
  out.detail << checked << " checks, " << skipped << " skipped, largest count " << worst_cycles;
}

// C5: the adaptive scheme isolates and ends at the oracle's unique minimum;
// the oblivious scheme isolates every balanced graph with <= 4 per side.
void criterion5(Outcome& out) {
  Rng rng(1005);
  for (int i = 0; i < 300; ++i) {
    std::size_t h = rng.uniform(1, 6);
    auto g = random_graph(rng, h, h, true);
    auto res = run_rounds_adaptive(g);
    auto best = min_weight_pms(g, res.weight.combined);
    bool unique = best.matchings.size() == 1;
    out.fail_if(!res.isolating || !unique, "adaptive not isolating, graph " + std::to_string(i));
    out.fail_if(unique && best.matchings[0].edges() != res.matching.edges(),
                "adaptive matching differs from oracle, graph " + std::to_string(i));
    g_traces.emplace_back(g.vertex_count(), std::move(res));
  }
  std::size_t oblivious = 0, vacuous = 0;
  std::uint64_t most_tries = 0;
  for (std::size_t h = 1; h <= 4; ++h) {
    const std::size_t cells = h * h;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
      std::vector<Edge> edges;
      for (std::size_t c = 0; c < cells; ++c) {
        if (mask >> c & 1) edges.push_back({c / h, c % h});
      }
      auto g = BipartiteGraph::with_sizes(h, h, std::move(edges));
      auto res = run_rounds_oblivious(g);
      ++oblivious;
      if (res.vacuous) {
        ++vacuous;
        continue;
      }
      most_tries = std::max(most_tries, res.tried);
      out.fail_if(!res.found || !res.weight || !is_isolating(g, res.weight->combined),
                  "oblivious failed on " + std::to_string(h) + "x" + std::to_string(h) +
                      " mask " + std::to_string(mask));
    }
  }
  out.detail << "300 adaptive runs; " << oblivious << " oblivious graphs (" << vacuous
             << " without a perfect matching), at most " << most_tries << " tuples tried";
}

// C6: the determinant is the signed sum over matchings, and extraction
// returns the unique minimum whenever the weight isolates.
void criterion6(Outcome& out) {
  Rng rng(1006);
  std::size_t dets = 0, extracts = 0;
  for (int i = 0; i < 400; ++i) {
    std::size_t h = rng.uniform(1, 6);
    auto g = random_graph(rng, h, h, i % 3 != 0);
    WeightAssignment w = i % 5 == 0 && g.edge_count() <= 17 ? exponential_weights(g) : random_weights(g, rng, 0, 1 + i % 9);
    ++dets;
    out.fail_if(determinant(build_matrix(g, w)) != signed_power_sum(g, w),
                "determinant mismatch, graph " + std::to_string(i));
    auto best = min_weight_pms(g, w);
    if (best.matchings.size() != 1) continue;
    ++extracts;
    auto ex = extract(g, w, 1);
    out.fail_if(!ex.matching || ex.matching->edges() != best.matchings[0].edges(),
                "extract mismatch, graph " + std::to_string(i));
  }
  out.detail << dets << " determinants, " << extracts << " isolating extractions";
}

// Random graph with h per side and no perfect matching: two left vertices
// only see the same right vertex.
BipartiteGraph without_pm(std::size_t h, Rng& rng) {
  auto base = random_bipartite(h, h, 0.2 + 0.5 * rng.uniform01(), rng, true);
  std::size_t a = rng.uniform(0, h - 1), b = (a + 1 + rng.uniform(0, h - 2)) % h;
  std::size_t v = rng.uniform(0, h - 1);
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < base.edge_count(); ++e) {
    const Edge& x = base.edge(e);
    if (x.left != a && x.left != b) edges.push_back(x);
  }
  edges.push_back({a, v});
  edges.push_back({b, v});
  return BipartiteGraph::with_sizes(h, h, std::move(edges));
}

// C7: one-sided randomized decision with a logarithmic bit budget.
void criterion7(Outcome& out) {
  Rng rng(1007);
  std::uint64_t most_bits_ratio_num = 0, ratio_den = 1;
  for (std::size_t n : {8, 12, 16, 20}) {
    const std::size_t h = n / 2;
    std::size_t negatives = 0, false_negatives = 0, false_positives = 0;
    for (int trial = 0; trial < 500; ++trial) {
      std::uint64_t seed = 70'000 * n + trial;
      auto pos = random_bipartite(h, h, 0.15 + 0.5 * rng.uniform01(), rng, true);
      auto d = decide_randomized(pos, seed);
      if (!d.has_pm) ++false_negatives;
      const std::uint64_t lim = budget_limit(n);
      out.fail_if(d.budget.bits_consumed() > lim,
                  "budget " + std::to_string(d.budget.bits_consumed()) + " > " +
                      std::to_string(lim));
      if (d.budget.bits_consumed() * ratio_den > most_bits_ratio_num * lim) {
        most_bits_ratio_num = d.budget.bits_consumed();
        ratio_den = lim;
      }
      if (trial % 2 == 0) {
        auto neg = without_pm(h, rng);
        ++negatives;
        if (decide_randomized(neg, seed ^ 0x5a5a).has_pm) ++false_positives;
      }
    }
    const double rate = static_cast<double>(false_negatives) / 500.0;
    const double bound = 2.0 * std::log(static_cast<double>(n)) / static_cast<double>(n);
    out.fail_if(rate > bound, "n=" + std::to_string(n) + " false-negative rate");
    out.fail_if(false_positives > 0, "n=" + std::to_string(n) + " false positive");
    out.detail << "n=" << n << ": " << false_negatives << "/500 false negatives (bound "
               << bound << "), " << false_positives << "/" << negatives << " false positives; ";
  }
  out.detail << "c=" << kBudgetConstant << ", peak bits/limit " << most_bits_ratio_num << "/"
             << ratio_den;
}

// C8: randomized search at n = 16; each success is a perfect matching of
// least weight under the drawn round weights, and equals M* when that is
// unique.
void criterion8(Outcome& out) {
  Rng rng(1008);
  const std::size_t n = 16, h = 8;
  std::size_t successes = 0, isolating = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto g = random_bipartite(h, h, 0.25 + 0.4 * rng.uniform01(), rng, true);
    auto res = search_randomized(g, 80'000 + trial, 1);
    if (!res.matching) continue;
    ++successes;
    out.fail_if(!MatchingSet(g, res.matching->edges()).is_perfect(), "search returned non-PM");
    std::vector<WeightAssignment> rounds;
    for (const auto& w : res.weights) rounds.push_back(WeightAssignment::from_ints(w));
    auto combined = combine(rounds, h).combined;
    auto best = min_weight_pms(g, combined);
    if (best.matchings.size() == 1) {
      ++isolating;
      out.fail_if(best.matchings[0].edges() != res.matching->edges(),
                  "search missed M*, trial " + std::to_string(trial));
    } else {
      out.fail_if(combined.total(res.matching->edges()) != *best.min_weight,
                  "search returned a heavier matching, trial " + std::to_string(trial));
    }
  }
  const double l = std::log(static_cast<double>(n));
  const double bound = 1.0 - 5.0 * l * l * l / static_cast<double>(n);
  const double rate = static_cast<double>(successes) / 200.0;
  out.fail_if(rate < bound, "success rate " + std::to_string(rate));
  out.detail << successes << "/200 successes (bound " << bound << "), " << isolating
             << " with a unique M*";
}

// C9: planar weighted counts equal enumeration; planar rounds reach the
// combined-weight minimum.
void criterion9(Outcome& out) {
  Rng rng(1009);
  std::vector<EmbeddedGraph> graphs;
  for (std::size_t r = 2; r <= 3; ++r) {
    for (std::size_t c = 2; c <= 4; ++c) graphs.push_back(grid_graph(r, c));
  }
  for (std::size_t len = 4; len <= 12; len += 2) graphs.push_back(cycle_graph(len));
  for (int i = 0; i < 40; ++i) graphs.push_back(tree_plus_edge(rng.uniform(2, 12), rng));
  std::size_t histograms = 0, rounds = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto& emb = graphs[i];
    for (int rep = 0; rep < 5; ++rep) {
      auto w = rep == 0 ? WeightAssignment(emb.graph.edge_count())
                        : random_weights(emb.graph, rng, 0, 2 * rep);
      WeightCountPolynomial expect;
      for (const auto& m : enumerate_pms(emb.graph)) expect[w.total(m.edges())] += 1;
      ++histograms;
      out.fail_if(count_by_weight(emb.graph, w, emb.rotation) != expect,
                  "histogram mismatch, graph " + std::to_string(i));
    }
    if (!has_perfect_matching(emb.graph)) continue;
    ++rounds;
    auto res = run_planar_rounds(emb.graph, emb.rotation, 1);
    auto best = min_weight_pms(emb.graph, res.weight.combined);
    out.fail_if(best.matchings.size() != 1 || best.matchings[0].edges() != res.matching.edges(),
                "planar rounds not at the unique minimum, graph " + std::to_string(i));
  }
  out.detail << graphs.size() << " graphs, " << histograms << " histograms, " << rounds
             << " round runs";
}

// C10: round weights below n^6, combined weights below B^k.
void criterion10(Outcome& out) {
  Rng rng(1010);
  for (int i = 0; i < 60; ++i) {
    std::size_t h = rng.uniform(4, 8);
    auto g = random_graph(rng, h, h, true);
    g_traces.emplace_back(g.vertex_count(), run_rounds_adaptive(g));
  }
  std::size_t weights = 0;
  for (const auto& [n, res] : g_traces) {
    const std::size_t k = std::max<std::size_t>(1, ceil_log2(n) - (n > 1 ? 1 : 0));
    out.fail_if(res.trace.k != k, "k=" + std::to_string(res.trace.k) + " at n=" + std::to_string(n));
    mpz_class n6 = power(n, 6);
    for (const auto& r : res.trace.rounds) {
      for (auto x : r.weights) {
        ++weights;
        out.fail_if(mpz_class(static_cast<long>(x)) >= n6, "round weight above n^6");
      }
    }
    mpz_class bk = 1;
    for (std::size_t i = 0; i < res.trace.k; ++i) bk *= res.weight.base;
    out.fail_if(res.weight.combined.max() >= bk, "combined weight above B^k");
  }
  out.detail << g_traces.size() << " traces, " << weights << " round weights";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;  // 0 = no runtime target
    std::function<void(Outcome&)> run;
  };
  std::vector<Criterion> criteria{
      {"C1 isolation frequency", 120, criterion1},
      {"C2 family covers small cycle sets", 300, criterion2},
      {"C3 min-weight union is flat", 180, criterion3},
      {"C4 short-cycle count bound", 120, criterion4},
      {"C5 deterministic rounds isolate", 600, criterion5},
      {"C6 determinant engine", 0, criterion6},
      {"C7 randomized decision", 0, criterion7},
      {"C8 randomized search", 0, criterion8},
      {"C9 planar counting", 0, criterion9},
      {"C10 weight magnitudes", 0, criterion10},
  };
  int failed = 0;
  for (auto& c : criteria) {
    Outcome out;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.fail_if(true, std::string("exception: ") + e.what());
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      out.fail_if(true, "runtime " + std::to_string(secs) + "s over target");
    }
    if (!out.pass) ++failed;
    std::printf("%s %s: %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", c.name,
                out.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
