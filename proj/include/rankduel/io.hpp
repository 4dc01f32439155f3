#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rankduel/game.hpp"
#include "rankduel/graph.hpp"
#include "rankduel/ranking.hpp"

namespace rankduel {

using json = nlohmann::json;

inline json to_json(const Graph& g) {
  json j;
  j["vertices"] = g.vertices();
  j["edges"] = json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
  return j;
}

inline Graph graph_from_json(const json& j) {
  const auto vs = j.at("vertices").get<std::vector<VertexId>>();
  std::vector<Edge> es;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edges must be pairs");
    es.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
  }
  return Graph::from_edges(vs, es);
}

inline json to_json(const ListAssignment& l) {
  json j = json::object();
  for (const auto& [v, s] : l) j[std::to_string(v)] = s;
  return j;
}

inline ListAssignment lists_from_json(const json& j) {
  ListAssignment l;
  for (const auto& [k, v] : j.items()) {
    auto& s = l[static_cast<VertexId>(std::stoul(k))];
    for (int c : v.get<std::vector<int>>()) {
      if (c < 1) throw std::invalid_argument("labels must be positive");
      s.insert(c);
    }
    if (s.empty()) throw std::invalid_argument("list of vertex " + k + " is empty");
  }
  return l;
}

inline json ranking_to_json(const Ranking& a) {
  json j = json::object();
  for (auto [v, c] : a) j[std::to_string(v)] = c;
  return j;
}

inline Ranking ranking_from_json(const json& j) {
  Ranking a;
  for (const auto& [k, v] : j.items()) a[static_cast<VertexId>(std::stoul(k))] = v.get<int>();
  return a;
}

inline json to_json(const Transcript& tr) {
  json j;
  j["variant"] = to_string(tr.variant);
  j["rounds"] = json::array();
  for (const auto& rd : tr.rounds) {
    json r{{"kind", to_string(rd.kind)}, {"T", rd.targets}, {"R", rd.removed}};
    if (rd.label) r["label"] = *rd.label;
    j["rounds"].push_back(std::move(r));
  }
  j["outcome"] = to_string(tr.outcome);
  if (tr.forfeit) {
    j["forfeit"] = to_string(*tr.forfeit);
    j["reason"] = tr.reason;
  }
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

namespace detail {
inline std::vector<std::size_t> parse_sizes(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');) {
    if (part.empty()) throw std::invalid_argument("empty size in '" + s + "'");
    long long x = std::stoll(part);
    if (x < 1) throw std::invalid_argument("sizes must be positive");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}
}  // namespace detail

/// Builds a graph from a descriptor: path:N, cycle:N, star:Q, dstar:M,N,
/// clique:N, kpend:P,Q, cat:A,B,..., spider:LEGS,LEN or file:PATH.
inline Graph parse_family(const std::string& desc) {
  const auto colon = desc.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("family descriptor needs NAME:ARGS");
  const std::string name = desc.substr(0, colon), args = desc.substr(colon + 1);
  if (name == "file") return graph_from_json(read_json_file(args));
  const auto n = detail::parse_sizes(args);
  auto want = [&](std::size_t k) {
    if (n.size() != k) throw std::invalid_argument("'" + name + "' takes " + std::to_string(k) + " size(s)");
  };
  if (name == "path") return want(1), path_graph(n[0]);
  if (name == "cycle") return want(1), cycle_graph(n[0]);
  if (name == "star") return want(1), star_graph(n[0]);
  if (name == "dstar") return want(2), double_star_graph(n[0], n[1]);
  if (name == "clique") return want(1), complete_graph(n[0]);
  if (name == "kpend") return want(2), clique_with_pendants(n[0], n[1]);
  if (name == "cat") return caterpillar_graph(n);
  if (name == "spider") return want(2), spider_graph(n[0], n[1]);
  throw std::invalid_argument("unknown graph family '" + name + "'");
}

/// Token spec: a single K for f = K everywhere, or comma-separated counts in
/// increasing vertex-id order.
inline TokenFunction parse_tokens(const std::string& spec, const Graph& g) {
  std::vector<int> values;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ',');) values.push_back(std::stoi(part));
  if (values.size() == 1 && g.order() != 1) return constant_tokens(g, values[0]);
  return tokens_in_order(g, values);
}

}  // namespace rankduel
