#include "isomatch/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "isomatch/errors.hpp"

namespace isomatch {

Json weight_to_json(const Weight& w) {
  if (w.fits_slong_p()) return Json(static_cast<std::int64_t>(w.get_si()));
  return Json(w.get_str());
}

Weight weight_from_json(const Json& j) {
  if (j.is_number_integer()) return Weight(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    Weight w;
    if (w.set_str(j.get<std::string>(), 10) != 0) throw InvalidInput("bad integer weight");
    return w;
  }
  throw InvalidInput("edge weight must be an integer");
}

std::string edge_label(const BipartiteGraph& g, EdgeId e) {
  return g.vertex_name(g.left_end(e)) + "," + g.vertex_name(g.right_end(e));
}

Json weights_to_json(const BipartiteGraph& g, const WeightAssignment& w) {
  Json out = Json::object();
  for (EdgeId e = 0; e < g.edge_count(); ++e) out[edge_label(g, e)] = weight_to_json(w[e]);
  return out;
}

Json matching_to_json(const BipartiteGraph& g, std::span<const EdgeId> edges) {
  Json out = Json::array();
  for (EdgeId e : edges) {
    out.push_back(Json::array({g.vertex_name(g.left_end(e)), g.vertex_name(g.right_end(e))}));
  }
  return out;
}

namespace {

struct NameIndex {
  std::unordered_map<std::string, VertexId> ids;
  std::size_t num_left = 0;

  explicit NameIndex(const BipartiteGraph& g) : num_left(g.num_left()) {
    for (VertexId v = 0; v < g.vertex_count(); ++v) ids.emplace(g.vertex_name(v), v);
  }
  VertexId at(const std::string& name) const {
    auto it = ids.find(name);
    if (it == ids.end()) throw InvalidInput("unknown vertex: " + name);
    return it->second;
  }
};

std::vector<std::string> name_list(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw InvalidInput(std::string("graph JSON needs an array \"") + key + "\"");
  }
  std::vector<std::string> out;
  for (const auto& x : j[key]) {
    if (!x.is_string()) throw InvalidInput("vertex names must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

}  // namespace

GraphFile parse_graph_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw InvalidInput(std::string("malformed graph JSON: ") + err.what());
  }
  if (!j.is_object()) throw InvalidInput("graph JSON must be an object");
  auto left = name_list(j, "left");
  auto right = name_list(j, "right");
  std::unordered_map<std::string, std::size_t> left_idx, right_idx;
  for (std::size_t i = 0; i < left.size(); ++i) left_idx.emplace(left[i], i);
  for (std::size_t i = 0; i < right.size(); ++i) right_idx.emplace(right[i], i);

  if (!j.contains("edges") || !j["edges"].is_array()) {
    throw InvalidInput("graph JSON needs an array \"edges\"");
  }
  std::vector<Edge> edges;
  std::vector<Weight> weights;
  std::size_t weighted = 0;
  for (const auto& item : j["edges"]) {
    if (!item.is_array() || item.size() < 2 || item.size() > 3 || !item[0].is_string() ||
        !item[1].is_string()) {
      throw InvalidInput("edge must be [\"left\", \"right\"] or [\"left\", \"right\", w]");
    }
    auto a = item[0].get<std::string>(), b = item[1].get<std::string>();
    if (!left_idx.count(a)) std::swap(a, b);  // endpoints may be listed right first
    auto li = left_idx.find(a);
    auto ri = right_idx.find(b);
    if (li == left_idx.end() || ri == right_idx.end()) {
      throw InvalidInput("edge " + a + "-" + b + " does not join a left and a right vertex");
    }
    edges.push_back({li->second, ri->second});
    if (item.size() == 3) {
      weights.push_back(weight_from_json(item[2]));
      ++weighted;
    } else {
      weights.emplace_back(0);
    }
  }
  if (weighted != 0 && weighted != edges.size()) {
    throw InvalidInput("either every edge carries a weight or none does");
  }
  GraphFile out{BipartiteGraph(std::move(left), std::move(right), std::move(edges)), {}, {}};
  if (weighted != 0) out.weights = WeightAssignment(std::move(weights));

  if (j.contains("rotation")) {
    const auto& rot = j["rotation"];
    if (!rot.is_object()) throw InvalidInput("\"rotation\" must map vertex -> neighbor list");
    NameIndex names(out.graph);
    RotationSystem rs(out.graph.vertex_count());
    std::vector<char> given(out.graph.vertex_count(), 0);
    for (const auto& [name, list] : rot.items()) {
      VertexId v = names.at(name);
      if (!list.is_array()) throw InvalidInput("rotation entry must be a list");
      for (const auto& u : list) {
        if (!u.is_string()) throw InvalidInput("rotation neighbors must be vertex names");
        rs[v].push_back(names.at(u.get<std::string>()));
      }
      given[v] = 1;
    }
    for (VertexId v = 0; v < out.graph.vertex_count(); ++v) {
      if (!given[v] && out.graph.degree(v) > 0) {
        throw InvalidInput("rotation missing for vertex " + out.graph.vertex_name(v));
      }
    }
    out.rotation = std::move(rs);
  }
  return out;
}

GraphFile parse_graph_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t nl = 0, nr = 0, declared = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::vector<Weight> weights;
  std::size_t weighted = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    auto fail = [&](const std::string& why) {
      throw InvalidInput("line " + std::to_string(line_no) + ": " + why);
    };
    if (tag == "p") {
      std::string kind;
      if (have_header) fail("second problem line");
      if (!(ls >> kind >> nl >> nr >> declared) || kind != "edge") {
        fail("expected 'p edge NL NR M'");
      }
      have_header = true;
    } else if (tag == "e") {
      if (!have_header) fail("edge before problem line");
      std::size_t u = 0, v = 0;
      if (!(ls >> u >> v) || u < 1 || u > nl || v < 1 || v > nr) fail("bad edge endpoints");
      edges.push_back({u - 1, v - 1});
      std::string w;
      if (ls >> w) {
        Weight x;
        if (x.set_str(w, 10) != 0) fail("bad weight");
        weights.push_back(x);
        ++weighted;
      } else {
        weights.emplace_back(0);
      }
    } else {
      fail("unknown line type '" + tag + "'");
    }
  }
  if (!have_header) throw InvalidInput("missing 'p edge' line");
  if (edges.size() != declared) throw InvalidInput("edge count does not match problem line");
  if (weighted != 0 && weighted != edges.size()) {
    throw InvalidInput("either every edge carries a weight or none does");
  }
  GraphFile out{BipartiteGraph::with_sizes(nl, nr, std::move(edges)), {}, {}};
  if (weighted != 0) out.weights = WeightAssignment(std::move(weights));
  return out;
}

GraphFile parse_graph(std::string_view text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string_view::npos && text[pos] == '{') return parse_graph_json(text);
  return parse_graph_dimacs(text);
}

GraphFile load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

Json graph_to_json(const BipartiteGraph& g, const WeightAssignment* w,
                   const RotationSystem* rotation) {
  Json out;
  out["left"] = g.left_names();
  out["right"] = g.right_names();
  Json edges = Json::array();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    Json item = Json::array({g.vertex_name(g.left_end(e)), g.vertex_name(g.right_end(e))});
    if (w) item.push_back(weight_to_json((*w)[e]));
    edges.push_back(std::move(item));
  }
  out["edges"] = std::move(edges);
  if (rotation) {
    Json rot = Json::object();
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      Json list = Json::array();
      for (VertexId u : (*rotation)[v]) list.push_back(g.vertex_name(u));
      rot[g.vertex_name(v)] = std::move(list);
    }
    out["rotation"] = std::move(rot);
  }
  return out;
}

}  // namespace isomatch
