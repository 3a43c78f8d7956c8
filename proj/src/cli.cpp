#include "isomatch/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "isomatch/cycles.hpp"
#include "isomatch/errors.hpp"
#include "isomatch/generators.hpp"
#include "isomatch/graph_io.hpp"
#include "isomatch/isolation.hpp"
#include "isomatch/mvv.hpp"
#include "isomatch/oracle.hpp"
#include "isomatch/parallel.hpp"
#include "isomatch/planar.hpp"
#include "isomatch/reductions.hpp"
#include "isomatch/rnc.hpp"
#include "isomatch/rounds.hpp"

namespace isomatch::cli {

namespace {

// Exponential weights 2^(i-1) keep determinant entries small enough up to here.
constexpr std::size_t kExponentialEdgeLimit = 17;

struct RunConfig {
  std::string scheme = "det";
  std::optional<std::uint64_t> seed;
  std::size_t oracle_limit = 0;  // 0 keeps the process default
  std::string output = "json";
  std::string verify_level = "sample";
  std::size_t workers = 0;
};

std::uint64_t require_seed(const RunConfig& cfg) {
  if (!cfg.seed) throw InvalidInput("--seed is required for scheme " + cfg.scheme);
  return *cfg.seed;
}

Json base_report() {
  Json j = Json::object();
  j["schema"] = 1;
  return j;
}

void emit(std::ostream& out, const Json& j, const std::string& format) {
  if (format == "json") {
    out << j.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : j.items()) {
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

Json budget_to_json(const RandomBudget& b) {
  Json draws = Json::array();
  for (const auto& d : b.draws()) {
    draws.push_back({{"purpose", d.purpose}, {"value", d.value}, {"bits", d.bits}});
  }
  return {{"random_bits", b.bits_consumed()}, {"draws", draws}};
}

Json edges_to_json(const BipartiteGraph& g, std::span<const EdgeId> edges) {
  return matching_to_json(g, edges);
}

Json histogram_to_json(const WeightCountPolynomial& p) {
  Json out = Json::array();
  for (const auto& [w, c] : p) {
    out.push_back({{"weight", weight_to_json(w)}, {"count", weight_to_json(c)}});
  }
  return out;
}

WeightAssignment uniform_draw_weights(const BipartiteGraph& g, Rng& rng) {
  WeightAssignment w(g.edge_count());
  const std::uint64_t top = std::max<std::uint64_t>(1, 2 * g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) w[e] = Weight(static_cast<unsigned long>(rng.uniform(1, top)));
  return w;
}

// Oracle check of a reported matching. `scheme_weight` is the weight under
// which the matching must be the unique minimum (nullptr: any PM will do).
std::string verify_matching(const BipartiteGraph& g, const MatchingSet& m,
                            const WeightAssignment* scheme_weight, const RunConfig& cfg) {
  if (!MatchingSet(g, m.edges()).is_perfect()) {
    throw InvariantViolation("reported matching is not perfect");
  }
  if (cfg.verify_level == "off") return "structural";
  try {
    if (scheme_weight) {
      auto best = min_weight_pms(g, *scheme_weight);
      if (best.matchings.size() != 1 || best.matchings[0].edges() != m.edges()) {
        throw InvariantViolation("reported matching is not the oracle's unique minimum");
      }
    }
    return "oracle";
  } catch (const OracleScaleError&) {
    if (cfg.verify_level == "exhaustive") throw;
    return "structural";
  }
}

GraphFile load(const std::string& path) { return load_graph_file(path); }

Json cmd_decide(const GraphFile& file, const RunConfig& cfg, int& code) {
  const BipartiteGraph& g = file.graph;
  Json j = base_report();
  j["scheme"] = cfg.scheme;
  bool has_pm = false;
  if (cfg.scheme == "det") {
    if (!g.is_balanced()) {
      j["method"] = "balance";
      j["certified"] = true;
    } else if (g.edge_count() <= kExponentialEdgeLimit) {
      Decision d = decide(g, exponential_weights(g), true);
      has_pm = d == Decision::kHasPmCertified;
      j["method"] = "mvv-exponential";
      j["certified"] = d != Decision::kIndeterminate;
    } else {
      try {
        AdaptiveOptions options;
        options.workers = cfg.workers;
        auto res = run_rounds_adaptive(g, options);
        has_pm = res.matching.is_perfect();
      } catch (const NoPerfectMatching&) {
        has_pm = false;
      }
      j["method"] = "rounds";
      j["certified"] = true;
    }
  } else if (cfg.scheme == "rand") {
    Rng rng(require_seed(cfg));
    WeightAssignment w = uniform_draw_weights(g, rng);
    Decision d = g.is_balanced() ? decide(g, w) : Decision::kNoPmCertified;
    has_pm = d == Decision::kHasPmCertified;
    j["method"] = "mvv-random";
    j["certified"] = d != Decision::kIndeterminate;
  } else if (cfg.scheme == "rnc") {
    auto res = decide_randomized(g, require_seed(cfg));
    has_pm = res.has_pm;
    j["method"] = "monomial-determinant";
    j["certified"] = res.has_pm || !g.is_balanced();
    j["primes"] = res.primes;
    j["point"] = res.point;
    j["error_bound"] = res.error_bound;
    j["budget"] = budget_to_json(res.budget);
    j["budget_limit"] = budget_limit(std::max<std::size_t>(1, g.vertex_count()));
  } else {
    throw InvalidInput("decide supports --scheme det, rand or rnc");
  }
  j["has_pm"] = has_pm;
  code = has_pm ? kOk : kNoPerfectMatching;
  return j;
}

Json cmd_find(const GraphFile& file, const RunConfig& cfg, const std::string& objective,
              std::size_t retries) {
  const BipartiteGraph& g = file.graph;
  Json j = base_report();
  j["scheme"] = cfg.scheme;
  j["objective"] = objective;
  if (!g.is_balanced()) throw NoPerfectMatching("unbalanced graph has no perfect matching");

  if (objective == "min-weight") {
    if (cfg.scheme != "det") throw InvalidInput("--objective min-weight needs --scheme det");
    if (!file.weights) throw InvalidInput("--objective min-weight needs edge weights in the file");
    auto res = min_weight_pm(g, *file.weights, cfg.workers);
    j["matching"] = edges_to_json(g, res.matching.edges());
    j["weight"] = weight_to_json(res.given_weight);
    j["stacked_weight"] = weight_to_json(res.weights.stacked.total(res.matching.edges()));
    j["scale"] = weight_to_json(res.weights.scale);
    j["method"] = res.method;
    j["certified"] = true;
    std::string level = verify_matching(g, res.matching, &res.weights.stacked, cfg);
    j["verified"] = level;
    return j;
  }
  if (objective != "pm") throw InvalidInput("--objective must be pm or min-weight");

  if (cfg.scheme == "det") {
    if (g.edge_count() <= kExponentialEdgeLimit) {
      WeightAssignment w = exponential_weights(g);
      if (decide(g, w, true) == Decision::kNoPmCertified) {
        throw NoPerfectMatching("graph has no perfect matching");
      }
      auto ex = extract(g, w, cfg.workers);
      if (!ex.matching) throw InvariantViolation("extraction failed: " + ex.failure);
      j["matching"] = edges_to_json(g, ex.matching->edges());
      j["weight"] = weight_to_json(ex.min_weight);
      j["method"] = "mvv-exponential";
      j["certified"] = true;
      j["verified"] = verify_matching(g, *ex.matching, &w, cfg);
      return j;
    }
    AdaptiveOptions options;
    options.workers = cfg.workers;
    auto res = run_rounds_adaptive(g, options);
    if (!res.isolating) throw InvariantViolation("combined weight does not isolate");
    j["matching"] = edges_to_json(g, res.matching.edges());
    j["weight"] = weight_to_json(res.weight.combined.total(res.matching.edges()));
    Json moduli = Json::array();
    for (const auto& r : res.trace.rounds) moduli.push_back(r.modulus);
    j["moduli"] = moduli;
    j["method"] = "rounds";
    j["certified"] = true;
    j["verified"] = verify_matching(g, res.matching, &res.weight.combined, cfg);
    return j;
  }

  if (cfg.scheme == "rand") {
    const std::uint64_t seed = require_seed(cfg);
    if (!has_perfect_matching(g)) throw NoPerfectMatching("graph has no perfect matching");
    for (std::size_t attempt = 0; attempt <= retries; ++attempt) {
      Rng rng(attempt == 0 ? seed : splitmix64(seed + attempt));
      WeightAssignment w = uniform_draw_weights(g, rng);
      auto ex = extract(g, w, cfg.workers);
      if (!ex.matching) continue;
      j["matching"] = edges_to_json(g, ex.matching->edges());
      j["weight"] = weight_to_json(ex.min_weight);
      j["weights"] = weights_to_json(g, w);
      j["attempts"] = attempt + 1;
      j["method"] = "mvv-random";
      j["certified"] = true;
      j["verified"] = verify_matching(g, *ex.matching, nullptr, cfg);
      return j;
    }
    throw InvariantViolation("no isolating draw after " + std::to_string(retries + 1) +
                             " attempts");
  }

  if (cfg.scheme == "rnc") {
    const std::uint64_t seed = require_seed(cfg);
    std::string last;
    for (std::size_t attempt = 0; attempt <= retries; ++attempt) {
      auto res = search_randomized(g, attempt == 0 ? seed : splitmix64(seed + attempt),
                                   cfg.workers);
      if (!res.matching) {
        if (res.chain.size() == 1 && !has_perfect_matching(g)) {
          throw NoPerfectMatching("graph has no perfect matching");
        }
        last = res.failure;
        continue;
      }
      j["matching"] = edges_to_json(g, res.matching->edges());
      j["primes"] = res.primes;
      j["point"] = res.point;
      j["targets"] = res.targets;
      j["attempts"] = attempt + 1;
      j["budget"] = budget_to_json(res.budget);
      j["budget_limit"] = budget_limit(g.vertex_count());
      j["method"] = "coefficient-chain";
      j["certified"] = true;
      j["verified"] = verify_matching(g, *res.matching, nullptr, cfg);
      return j;
    }
    throw InvariantViolation("randomized search failed after " + std::to_string(retries + 1) +
                             " attempts: " + last);
  }

  if (cfg.scheme == "planar") {
    if (!file.rotation) throw InvalidInput("--scheme planar needs a \"rotation\" field");
    auto res = run_planar_rounds(g, *file.rotation, cfg.workers);
    j["matching"] = edges_to_json(g, res.matching.edges());
    if (!res.rounds.empty()) {
      j["weight"] = weight_to_json(res.weight.combined.total(res.matching.edges()));
    }
    Json moduli = Json::array();
    for (const auto& r : res.rounds) moduli.push_back(r.modulus);
    j["moduli"] = moduli;
    j["method"] = "planar-counting";
    j["certified"] = true;
    j["verified"] = verify_matching(g, res.matching,
                                    res.rounds.empty() ? nullptr : &res.weight.combined, cfg);
    return j;
  }
  throw InvalidInput("--scheme must be det, rand, rnc or planar");
}

Json cmd_isolate(const GraphFile& file, const RunConfig& cfg, std::optional<std::uint64_t> s_opt,
                 std::size_t limit) {
  const BipartiteGraph& g = file.graph;
  const std::uint64_t n = g.vertex_count();
  if (n == 0 || g.edge_count() == 0) throw InvalidInput("isolate needs a graph with edges");
  std::uint64_t s = s_opt.value_or(0);
  if (!s_opt) {
    if (n > 50'000) throw InvalidInput("graph too large for the default s = n^4");
    s = n * n * n * n;
  }
  Json j = base_report();
  j["scheme"] = cfg.scheme;
  j["n"] = n;
  j["s"] = s;
  Json entries = Json::array();
  if (cfg.scheme == "det") {
    const std::uint64_t t = family_bound(n, s);
    j["t"] = t;
    const std::uint64_t count = std::min<std::uint64_t>(t - 1, limit);
    for (std::uint64_t jj = 2; jj < 2 + count; ++jj) {
      entries.push_back({{"modulus", jj},
                         {"weights", weights_to_json(g, WeightAssignment::from_ints(
                                                            exponential_mod(g.edge_count(), jj)))}});
    }
    j["entries"] = entries;
    j["truncated"] = count < t - 1;
  } else if (cfg.scheme == "rand") {
    Rng rng(require_seed(cfg));
    RandomBudget budget;
    auto pw = random_prime_weights(g, s, rng, &budget);
    j["t"] = pw.t;
    entries.push_back({{"modulus", pw.prime},
                       {"prime_index", pw.prime_index},
                       {"weights", weights_to_json(g, pw.weights)}});
    j["entries"] = entries;
    j["budget"] = budget_to_json(budget);
  } else {
    throw InvalidInput("isolate supports --scheme det or rand");
  }
  return j;
}

Json cmd_trace(const GraphFile& file, const RunConfig& cfg) {
  const BipartiteGraph& g = file.graph;
  AdaptiveOptions options;
  options.workers = cfg.workers;
  auto res = run_rounds_adaptive(g, options);
  const auto& tr = res.trace;
  Json j = base_report();
  j["n"] = tr.n;
  j["k"] = tr.k;
  j["s"] = tr.s;
  j["t"] = tr.t;
  Json rounds = Json::array();
  for (const auto& r : tr.rounds) {
    Json w = Json::object();
    for (EdgeId e : r.edges) w[edge_label(g, e)] = r.weights[e];
    rounds.push_back({{"index", r.index},
                      {"edges", edges_to_json(g, r.edges)},
                      {"modulus", r.modulus},
                      {"weights", w},
                      {"girth_bound", r.girth_bound},
                      {"r_prime", r.r_prime},
                      {"odd_branch", r.odd_branch},
                      {"threshold", r.threshold},
                      {"short_cycles", r.short_cycles},
                      {"candidates_tried", r.candidates_tried},
                      {"girth_ok", r.girth_ok},
                      {"cycle_bound_ok", r.cycle_bound_ok},
                      {"union_cross_checked", r.union_cross_checked}});
  }
  j["rounds"] = rounds;
  j["effective_rounds"] = tr.effective_rounds;
  j["matching"] = edges_to_json(g, res.matching.edges());
  j["base"] = weight_to_json(res.weight.base);
  j["combined"] = weights_to_json(g, res.weight.combined);
  j["isolating"] = res.isolating;
  return j;
}

struct SuiteTally {
  std::size_t graphs = 0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t violations = 0;
};

WeightAssignment small_weights(const BipartiteGraph& g, Rng& rng, std::uint64_t top) {
  WeightAssignment w(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) w[e] = Weight(static_cast<unsigned long>(rng.uniform(0, top)));
  return w;
}

void run_suite(const std::string& suite, const BipartiteGraph& g, Rng& rng, SuiteTally& tally) {
  ++tally.graphs;
  const std::size_t n = g.vertex_count();
  if ((suite == "cycles-vanish" || suite == "equal-weights") && !has_perfect_matching(g)) {
    ++tally.skipped;
    return;
  }
  if (suite == "cycles-vanish") {
    auto rep = verify_cycles_vanish(g, small_weights(g, rng, 3));
    ++tally.checked;
    tally.violations += rep.violations.size();
  } else if (suite == "equal-weights") {
    auto rep = verify_equal_weights(g, small_weights(g, rng, 3));
    ++tally.checked;
    tally.violations += rep.violations;
  } else if (suite == "cycle-bound") {
    auto gi = girth(g);
    std::size_t r = gi ? *gi - 1 : std::max<std::size_t>(n, 3);
    auto rep = verify_cycle_bound(g, std::max<std::size_t>(r, 3));
    if (rep.skipped) {
      ++tally.skipped;
      return;
    }
    ++tally.checked;
    if (!rep.ok()) ++tally.violations;
  } else if (suite == "family-coverage") {
    const std::size_t cycles = count_cycles(g, n);
    if (cycles == 0) {
      ++tally.skipped;
      return;
    }
    ++tally.checked;
    try {
      screen_round(g, g.all_edges(), n, family_bound(n, cycles));
    } catch (const InvariantViolation&) {
      ++tally.violations;
    }
  } else if (suite == "mvv") {
    if (!g.is_balanced()) {
      ++tally.skipped;
      return;
    }
    ++tally.checked;
    WeightAssignment w = small_weights(g, rng, std::max<std::size_t>(1, g.edge_count()));
    if (determinant(build_matrix(g, w)) != signed_power_sum(g, w)) ++tally.violations;
    auto best = min_weight_pms(g, w);
    if (best.matchings.size() == 1) {
      auto ex = extract(g, w);
      if (!ex.matching || ex.matching->edges() != best.matchings[0].edges()) ++tally.violations;
    }
  } else {
    throw InvalidInput("unknown suite " + suite);
  }
}

Json cmd_verify(const std::string& suite_arg, std::size_t random_count,
                const std::string& dir, std::size_t max_vertices, const RunConfig& cfg,
                int& code) {
  const std::vector<std::string> all = {"cycles-vanish", "equal-weights", "cycle-bound",
                                        "family-coverage", "mvv"};
  std::vector<std::string> suites;
  if (suite_arg == "all") {
    suites = all;
  } else if (std::find(all.begin(), all.end(), suite_arg) != all.end()) {
    suites = {suite_arg};
  } else {
    throw InvalidInput("unknown suite " + suite_arg);
  }
  if (max_vertices < 2) throw InvalidInput("--max-vertices must be at least 2");

  std::vector<BipartiteGraph> graphs;
  if (!dir.empty()) {
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_regular_file()) paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) graphs.push_back(load_graph_file(p).graph);
  }
  if (random_count > 0) {
    Rng rng(require_seed(cfg));
    for (std::size_t i = 0; i < random_count; ++i) {
      std::size_t half = max_vertices / 2;
      std::size_t nl = 1 + rng.uniform(0, half - 1);
      std::size_t nr = rng.uniform(0, 1) == 0 ? nl : 1 + rng.uniform(0, half - 1);
      double p = 0.3 + 0.5 * rng.uniform01();
      graphs.push_back(random_bipartite(nl, nr, p, rng, nl == nr && rng.uniform(0, 1) == 1));
    }
  }
  if (graphs.empty()) throw InvalidInput("verify needs --random N or --dir PATH");

  Json j = base_report();
  Json report = Json::object();
  std::size_t total = 0;
  Rng weights_rng(cfg.seed.value_or(0) ^ 0x5eedULL);
  for (const auto& suite : suites) {
    SuiteTally tally;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      Rng rng = weights_rng.split(i);
      run_suite(suite, graphs[i], rng, tally);
    }
    report[suite] = {{"graphs", tally.graphs},
                     {"checked", tally.checked},
                     {"skipped", tally.skipped},
                     {"violations", tally.violations}};
    total += tally.violations;
  }
  j["suites"] = report;
  j["violations"] = total;
  code = total == 0 ? kOk : kInvariantFailure;
  return j;
}

Json cmd_count_planar(const GraphFile& file, int& code) {
  if (!file.rotation) throw InvalidInput("count-planar needs a \"rotation\" field");
  const BipartiteGraph& g = file.graph;
  WeightAssignment w = file.weights.value_or(WeightAssignment(g.edge_count()));
  auto hist = count_by_weight(g, w, *file.rotation);
  Json j = base_report();
  j["histogram"] = histogram_to_json(hist);
  j["total"] = weight_to_json(total_count(hist));
  code = hist.empty() ? kNoPerfectMatching : kOk;
  return j;
}

Json cmd_max_matching(const GraphFile& file, const RunConfig& cfg) {
  const BipartiteGraph& g = file.graph;
  MatchingSet m = maximum_matching(g, cfg.workers);
  if (m.size() != hopcroft_karp(g).size()) {
    throw InvariantViolation("matching is not of maximum cardinality");
  }
  Json j = base_report();
  j["size"] = m.size();
  j["matching"] = edges_to_json(g, m.edges());
  return j;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

Json cmd_bench(const std::string& generator, std::size_t n, double p,
               const std::vector<std::size_t>& worker_counts, const RunConfig& cfg) {
  if (generator.empty()) throw InvalidInput("bench needs --generator complete|random|grid");
  if (n < 2) throw InvalidInput("bench needs --n of at least 2");
  BipartiteGraph g;
  if (generator == "complete") {
    g = complete_bipartite(n / 2, n / 2);
  } else if (generator == "random") {
    Rng rng(cfg.seed.value_or(1));
    g = random_bipartite(n / 2, n / 2, p, rng, true);
  } else if (generator == "grid") {
    g = grid_graph(2, n / 2).graph;
  } else {
    throw InvalidInput("unknown generator " + generator);
  }
  if (worker_counts.empty()) throw InvalidInput("--workers-list must not be empty");
  const std::size_t nv = g.vertex_count();
  Json j = base_report();
  j["generator"] = generator;
  j["n"] = nv;
  j["m"] = g.edge_count();
  j["hardware_threads"] = std::thread::hardware_concurrency();

  auto start = std::chrono::steady_clock::now();
  const std::uint64_t nn = nv;
  auto screened = screen_round(g, g.all_edges(), cycle_threshold(0, nv),
                               family_bound(nn, nn * nn * nn * nn));
  const double family_ms = elapsed_ms(start);
  WeightAssignment w = WeightAssignment::from_ints(screened.weights);

  start = std::chrono::steady_clock::now();
  mpz_class det = determinant(build_matrix(g, w));
  const double det_ms = elapsed_ms(start);

  j["modulus"] = screened.modulus;
  j["phases"] = {{"family_ms", family_ms}, {"determinant_ms", det_ms}};
  j["determinant_zero"] = det == 0;
  Json runs = Json::array();
  double base_ms = 0;
  for (std::size_t i = 0; i < worker_counts.size(); ++i) {
    if (worker_counts[i] == 0) throw InvalidInput("worker counts must be positive");
    start = std::chrono::steady_clock::now();
    bool ok = false;
    if (det != 0) ok = extract(g, w, worker_counts[i]).matching.has_value();
    const double ms = elapsed_ms(start);
    if (i == 0) base_ms = ms;
    runs.push_back({{"workers", worker_counts[i]},
                    {"extract_ms", ms},
                    {"speedup", ms > 0 ? base_ms / ms : 1.0},
                    {"extract_ok", ok}});
  }
  j["extract"] = runs;
  return j;
}

std::vector<std::size_t> parse_worker_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoul(item));
    } catch (const std::exception&) {
      throw InvalidInput("bad worker count " + item);
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Derandomized isolation for bipartite perfect matching", "isomatch"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "random seed (required by rand and rnc)");
  app.add_option("--workers", cfg.workers, "worker threads, 0 = hardware");
  app.add_option("--oracle-limit", cfg.oracle_limit, "vertex cap of the brute-force oracle");
  app.add_option("--output", cfg.output, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--verify-level", cfg.verify_level, "off, sample or exhaustive")
      ->check(CLI::IsMember({"off", "sample", "exhaustive"}));

  std::string file;
  std::string objective = "pm";
  std::size_t retries = 4;
  std::optional<std::uint64_t> s_opt;
  std::size_t limit = 16;
  std::string suite = "all";
  std::size_t random_count = 0;
  std::string dir;
  std::size_t max_vertices = 12;
  std::string generator;
  std::size_t bench_n = 0;
  double bench_p = 0.5;
  std::string worker_list = "1";

  auto scheme_opt = [&](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--scheme", cfg.scheme, "weight source")->check(CLI::IsMember(allowed));
  };
  auto* decide_cmd = app.add_subcommand("decide", "does the graph have a perfect matching");
  decide_cmd->add_option("file", file, "graph file")->required();
  scheme_opt(decide_cmd, {"det", "rand", "rnc"});

  auto* find_cmd = app.add_subcommand("find", "construct a perfect matching");
  find_cmd->add_option("file", file, "graph file")->required();
  scheme_opt(find_cmd, {"det", "rand", "rnc", "planar"});
  find_cmd->add_option("--objective", objective, "pm or min-weight")
      ->check(CLI::IsMember({"pm", "min-weight"}));
  find_cmd->add_option("--retries", retries, "extra attempts for randomized schemes");

  auto* isolate_cmd = app.add_subcommand("isolate", "emit the weight family or a random draw");
  isolate_cmd->add_option("file", file, "graph file")->required();
  scheme_opt(isolate_cmd, {"det", "rand"});
  isolate_cmd->add_option("--s", s_opt, "number of cycles to cover (default n^4)");
  isolate_cmd->add_option("--limit", limit, "family entries to print");

  auto* trace_cmd = app.add_subcommand("trace-rounds", "run the round scheme and emit its trace");
  trace_cmd->add_option("file", file, "graph file")->required();

  auto* verify_cmd = app.add_subcommand("verify", "run property suites against the oracle");
  verify_cmd->add_option("--suite", suite, "cycles-vanish, equal-weights, cycle-bound, "
                                           "family-coverage, mvv or all");
  verify_cmd->add_option("--random", random_count, "number of random graphs");
  verify_cmd->add_option("--dir", dir, "directory of graph files");
  verify_cmd->add_option("--max-vertices", max_vertices, "vertex cap of random graphs");

  auto* count_cmd = app.add_subcommand("count-planar", "perfect matchings by weight");
  count_cmd->add_option("file", file, "graph file with rotation")->required();

  auto* max_cmd = app.add_subcommand("max-matching", "maximum-cardinality matching");
  max_cmd->add_option("file", file, "graph file")->required();

  auto* bench_cmd = app.add_subcommand("bench", "per-phase timings");
  bench_cmd->add_option("--generator", generator, "complete, random or grid");
  bench_cmd->add_option("--n", bench_n, "vertex count");
  bench_cmd->add_option("--p", bench_p, "edge probability for random");
  bench_cmd->add_option("--workers-list", worker_list, "comma-separated worker counts");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (app.count("--seed") > 0) cfg.seed = seed;

  try {
    if (cfg.oracle_limit != 0) {
      if (cfg.oracle_limit < 4) throw InvalidInput("--oracle-limit must be at least 4");
      OracleLimits limits = default_oracle_limits();
      limits.max_vertices = cfg.oracle_limit;
      set_default_oracle_limits(limits);
    }
    if (cfg.workers != 0) set_default_workers(cfg.workers);
    int code = kOk;
    Json report;
    if (decide_cmd->parsed()) {
      report = cmd_decide(load(file), cfg, code);
    } else if (find_cmd->parsed()) {
      report = cmd_find(load(file), cfg, objective, retries);
    } else if (isolate_cmd->parsed()) {
      report = cmd_isolate(load(file), cfg, s_opt, limit);
    } else if (trace_cmd->parsed()) {
      report = cmd_trace(load(file), cfg);
    } else if (verify_cmd->parsed()) {
      report = cmd_verify(suite, random_count, dir, max_vertices, cfg, code);
    } else if (count_cmd->parsed()) {
      report = cmd_count_planar(load(file), code);
    } else if (max_cmd->parsed()) {
      report = cmd_max_matching(load(file), cfg);
    } else if (bench_cmd->parsed()) {
      report = cmd_bench(generator, bench_n, bench_p, parse_worker_list(worker_list), cfg);
    }
    emit(out, report, cfg.output);
    return code;
  } catch (const NoPerfectMatching& e) {
    Json j = base_report();
    j["has_pm"] = false;
    j["error"] = e.what();
    emit(out, j, cfg.output);
    return kNoPerfectMatching;
  } catch (const InvariantViolation& e) {
    err << "invariant failure: " << e.what() << "\n";
    return kInvariantFailure;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const OracleScaleError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace isomatch::cli
