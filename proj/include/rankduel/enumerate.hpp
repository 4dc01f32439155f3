#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "rankduel/errors.hpp"
#include "rankduel/graph.hpp"

// Exhaustive generators for small graphs and trees, used by the claim suites
// and the property tests.

namespace rankduel {

/// Every labelled graph on vertices 0..n-1.
inline std::vector<Graph> all_labelled_graphs(std::size_t n) {
  if (n > 6) throw CapExceeded("all_labelled_graphs supports at most 6 vertices");
  std::vector<Edge> slots;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  std::vector<Graph> out;
  for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
    Graph g(n);
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (mask >> i & 1u) g.add_edge(slots[i].first, slots[i].second);
    out.push_back(std::move(g));
  }
  return out;
}

/// Lexicographically least adjacency string over all relabellings.
inline std::string canonical_form(const Graph& g) {
  const auto vs = g.vertices();
  if (vs.size() > 8) throw CapExceeded("canonical_form supports at most 8 vertices");
  std::vector<std::size_t> perm(vs.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string s(vs.size() * vs.size(), '0');
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = 0; j < vs.size(); ++j)
        if (g.adjacent(vs[perm[i]], vs[perm[j]])) s[i * vs.size() + j] = '1';
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// One graph per isomorphism class on n vertices, ids 0..n-1.
inline std::vector<Graph> graph_classes(std::size_t n, bool connected_only) {
  std::map<std::string, Graph> seen;
  for (auto& g : all_labelled_graphs(n)) {
    if (connected_only && !is_connected(g)) continue;
    seen.try_emplace(canonical_form(g), std::move(g));
  }
  std::vector<Graph> out;
  for (auto& [_, g] : seen) out.push_back(std::move(g));
  return out;
}

namespace detail {
inline std::string rooted_code(const Graph& t, VertexId v, VertexId parent) {
  std::vector<std::string> kids;
  for (VertexId w : t.neighbors(v))
    if (w != parent) kids.push_back(rooted_code(t, w, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

inline std::string tree_code(const Graph& t) {
  std::string best;
  for (VertexId v : t.vertices()) {
    std::string c = rooted_code(t, v, v);
    if (best.empty() || c < best) best = c;
  }
  return best;
}
}  // namespace detail

/// One tree per isomorphism class on n >= 1 vertices, ids 0..n-1.
inline std::vector<Graph> all_trees(std::size_t n) {
  if (n == 0) return {};
  std::vector<Graph> level{Graph(1)};
  for (std::size_t size = 2; size <= n; ++size) {
    std::map<std::string, Graph> seen;
    for (const auto& t : level)
      for (VertexId v : t.vertices()) {
        Graph g = t;
        const VertexId leaf = g.add_vertex();
        g.add_edge(v, leaf);
        seen.try_emplace(detail::tree_code(g), std::move(g));
      }
    level.clear();
    for (auto& [_, g] : seen) level.push_back(std::move(g));
  }
  return level;
}

}  // namespace rankduel
