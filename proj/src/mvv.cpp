#include "isomatch/mvv.hpp"

#include "isomatch/errors.hpp"
#include "isomatch/parallel.hpp"

namespace isomatch {

namespace {

void check_weights(const BipartiteGraph& g, const WeightAssignment& w) {
  if (w.size() != g.edge_count()) throw InvalidInput("weight assignment does not match graph");
  for (const auto& x : w.values()) {
    if (sgn(x) < 0) throw InvalidInput("power matrix needs nonnegative weights");
    if (x > kMaxPowerExponent) {
      throw InvalidInput("weight " + x.get_str() + " is too large for a 2^w entry");
    }
  }
}

}  // namespace

const char* to_string(Decision d) {
  switch (d) {
    case Decision::kHasPmCertified:
      return "has_pm_certified";
    case Decision::kNoPmCertified:
      return "no_pm_certified";
    case Decision::kIndeterminate:
      return "indeterminate";
  }
  return "?";
}

PowerMatrix build_matrix(const BipartiteGraph& g, const WeightAssignment& w) {
  if (!g.is_balanced()) throw InvalidInput("power matrix needs a balanced graph");
  check_weights(g, w);
  const std::size_t n = g.num_left();
  PowerMatrix a{IntMatrix(n, std::vector<mpz_class>(n, 0))};
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    mpz_class& x = a.entries[g.edge(e).left][g.edge(e).right];
    mpz_ui_pow_ui(x.get_mpz_t(), 2, w[e].get_ui());
  }
  return a;
}

mpz_class determinant(const PowerMatrix& a) { return bareiss_determinant(a.entries); }

unsigned long two_adic_valuation(const mpz_class& x) {
  if (x == 0) throw InvalidInput("valuation of zero is undefined");
  return mpz_scan1(x.get_mpz_t(), 0);
}

Decision decide(const BipartiteGraph& g, const WeightAssignment& w, bool weight_known_isolating) {
  if (!g.is_balanced()) return Decision::kNoPmCertified;
  if (determinant(build_matrix(g, w)) != 0) return Decision::kHasPmCertified;
  return weight_known_isolating ? Decision::kNoPmCertified : Decision::kIndeterminate;
}

Weight min_matching_weight(const BipartiteGraph& g, const WeightAssignment& w) {
  mpz_class det = determinant(build_matrix(g, w));
  if (det == 0) throw InvalidInput("determinant is zero; minimum weight is undefined");
  return Weight(two_adic_valuation(det));
}

ExtractResult extract(const BipartiteGraph& g, const WeightAssignment& w, std::size_t workers) {
  PowerMatrix a = build_matrix(g, w);
  mpz_class det = determinant(a);
  if (det == 0) throw InvalidInput("determinant is zero; nothing to extract");
  ExtractResult out;
  const unsigned long min_weight = two_adic_valuation(det);
  out.min_weight = Weight(min_weight);
  std::vector<char> keep(g.edge_count(), 0);
  parallel_for(
      g.edge_count(),
      [&](std::size_t e) {
        IntMatrix m = a.entries;
        m[g.edge(e).left][g.edge(e).right] = 0;
        mpz_class d = bareiss_determinant(std::move(m));
        keep[e] = d == 0 || two_adic_valuation(d) > min_weight;
      },
      workers);
  EdgeSet chosen;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (keep[e]) chosen.push_back(e);
  }
  MatchingSet m(g, chosen);
  if (!m.is_perfect()) {
    out.failure = "selected edges do not form a perfect matching";
  } else if (w.total(m.edges()) != out.min_weight) {
    out.failure = "selected matching does not have the minimum weight";
  } else {
    out.matching = std::move(m);
  }
  return out;
}

}  // namespace isomatch
