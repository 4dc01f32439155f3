#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rankduel/errors.hpp"

namespace rankduel {

/// Stable vertex name. Ids are issued in increasing order and never reused
/// within one graph, so deletions and contractions leave surviving names intact.
using VertexId = std::uint32_t;
using VertexSet = std::set<VertexId>;
using Edge = std::pair<VertexId, VertexId>;

/// Simple undirected graph with persistent vertex identities.
class Graph {
 public:
  Graph() = default;

  /// Graph on vertices 0..n-1 with no edges.
  explicit Graph(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) add_vertex();
  }

  static Graph from_edges(std::span<const VertexId> vertices, std::span<const Edge> edges) {
    std::vector<VertexId> ids(vertices.begin(), vertices.end());
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
      throw std::invalid_argument("duplicate vertex id");
    Graph g;
    for (VertexId v : ids) g.add_vertex(v);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  /// Issues the next fresh id.
  VertexId add_vertex() { return add_vertex(static_cast<VertexId>(alive_.size())); }

  /// Adds a vertex with an explicit id, which must not have been issued before.
  VertexId add_vertex(VertexId id) {
    if (id < alive_.size()) throw std::invalid_argument("vertex id " + std::to_string(id) + " already issued");
    alive_.resize(static_cast<std::size_t>(id) + 1, 0);
    adj_.resize(static_cast<std::size_t>(id) + 1);
    alive_[id] = 1;
    ++order_;
    return id;
  }

  void add_edge(VertexId u, VertexId v) {
    if (u == v) throw std::invalid_argument("loops are not allowed");
    require(u);
    require(v);
    auto& nu = adj_[u];
    auto it = std::lower_bound(nu.begin(), nu.end(), v);
    if (it != nu.end() && *it == v) return;
    nu.insert(it, v);
    auto& nv = adj_[v];
    nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
    ++size_;
  }

  void remove_vertex(VertexId v) {
    require(v);
    for (VertexId w : adj_[v]) {
      auto& nw = adj_[w];
      nw.erase(std::lower_bound(nw.begin(), nw.end(), v));
      --size_;
    }
    adj_[v].clear();
    alive_[v] = 0;
    --order_;
  }

  bool contains(VertexId v) const { return v < alive_.size() && alive_[v]; }

  bool adjacent(VertexId u, VertexId v) const {
    if (!contains(u) || !contains(v)) return false;
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  /// Sorted neighbour list.
  const std::vector<VertexId>& neighbors(VertexId v) const {
    require(v);
    return adj_[v];
  }

  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  std::vector<VertexId> vertices() const {
    std::vector<VertexId> out;
    out.reserve(order_);
    for (VertexId v = 0; v < alive_.size(); ++v)
      if (alive_[v]) out.push_back(v);
    return out;
  }

  VertexSet vertex_set() const {
    auto vs = vertices();
    return VertexSet(vs.begin(), vs.end());
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(size_);
    for (VertexId u = 0; u < alive_.size(); ++u)
      for (VertexId v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  std::size_t order() const { return order_; }
  std::size_t size() const { return size_; }
  bool empty() const { return order_ == 0; }

  /// One past the largest id ever issued.
  VertexId id_bound() const { return static_cast<VertexId>(alive_.size()); }

  /// Induced subgraph; ids (and the id counter) are preserved.
  Graph induced(const VertexSet& keep) const {
    Graph g = *this;
    for (VertexId v : vertices())
      if (!keep.contains(v)) g.remove_vertex(v);
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices() == b.vertices() && a.edges() == b.edges();
  }

 private:
  void require(VertexId v) const {
    if (!contains(v)) throw std::out_of_range("vertex " + std::to_string(v) + " not in graph");
  }

  std::vector<std::uint8_t> alive_;
  std::vector<std::vector<VertexId>> adj_;
  std::size_t order_ = 0;
  std::size_t size_ = 0;
};

/// Origin sets U(w) of the vertices of a minor, keyed by minor vertex.
struct MinorMap {
  std::map<VertexId, VertexSet> origin;

  static MinorMap identity(const Graph& g) {
    MinorMap m;
    for (VertexId v : g.vertices()) m.origin[v] = {v};
    return m;
  }

  /// U(w); a vertex the map has never seen stands for itself.
  VertexSet of(VertexId w) const {
    auto it = origin.find(w);
    return it == origin.end() ? VertexSet{w} : it->second;
  }
};

// ---------------------------------------------------------------------------
// Families. Vertices are numbered in canonical order: path and cycle order,
// star centre last, double-star centres x then y last.

inline Graph path_graph(std::size_t n) {
  if (n < 1) throw std::invalid_argument("path needs at least one vertex");
  Graph g(n);
  for (VertexId i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least three vertices");
  Graph g = path_graph(n);
  g.add_edge(static_cast<VertexId>(n - 1), 0);
  return g;
}

inline Graph star_graph(std::size_t leaves) {
  if (leaves < 1) throw std::invalid_argument("star needs at least one leaf");
  Graph g(leaves + 1);
  const auto centre = static_cast<VertexId>(leaves);
  for (VertexId i = 0; i < leaves; ++i) g.add_edge(i, centre);
  return g;
}

/// Leaves x_1..x_m are 0..m-1, y_1..y_n are m..m+n-1, then x, then y.
inline Graph double_star_graph(std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) throw std::invalid_argument("double star needs at least one leaf on each centre");
  Graph g(m + n + 2);
  const auto x = static_cast<VertexId>(m + n);
  const auto y = x + 1;
  g.add_edge(x, y);
  for (VertexId i = 0; i < m; ++i) g.add_edge(i, x);
  for (VertexId i = 0; i < n; ++i) g.add_edge(static_cast<VertexId>(m + i), y);
  return g;
}

inline Graph complete_graph(std::size_t n) {
  if (n < 1) throw std::invalid_argument("complete graph needs at least one vertex");
  Graph g(n);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

/// K_p on 0..p-1 with q pendant vertices attached round-robin to 0..p-2, so
/// vertex p-1 carries no pendant.
inline Graph clique_with_pendants(std::size_t p, std::size_t q) {
  if (p < 2) throw std::invalid_argument("clique_with_pendants needs p >= 2");
  Graph g = complete_graph(p);
  for (std::size_t i = 0; i < q; ++i) {
    VertexId leaf = g.add_vertex();
    g.add_edge(leaf, static_cast<VertexId>(i % (p - 1)));
  }
  return g;
}

/// Spine 0..s-1 in path order, then the leaves of spine vertex 0, of 1, ...
inline Graph caterpillar_graph(std::span<const std::size_t> leaves_per_spine) {
  if (leaves_per_spine.empty()) throw std::invalid_argument("caterpillar needs a spine");
  Graph g = path_graph(leaves_per_spine.size());
  for (std::size_t s = 0; s < leaves_per_spine.size(); ++s)
    for (std::size_t i = 0; i < leaves_per_spine[s]; ++i) g.add_edge(g.add_vertex(), static_cast<VertexId>(s));
  return g;
}

/// Centre 0 with `legs` paths of `length` vertices each hanging off it.
inline Graph spider_graph(std::size_t legs, std::size_t length) {
  if (legs < 1 || length < 1) throw std::invalid_argument("spider needs positive legs and length");
  Graph g(1);
  for (std::size_t l = 0; l < legs; ++l) {
    VertexId prev = 0;
    for (std::size_t i = 0; i < length; ++i) {
      VertexId v = g.add_vertex();
      g.add_edge(prev, v);
      prev = v;
    }
  }
  return g;
}

// ---------------------------------------------------------------------------

/// Connected components, each as a vertex set, ordered by least member.
inline std::vector<VertexSet> components(const Graph& g) {
  std::vector<VertexSet> out;
  VertexSet seen;
  for (VertexId s : g.vertices()) {
    if (seen.contains(s)) continue;
    VertexSet comp{s};
    std::queue<VertexId> q;
    q.push(s);
    seen.insert(s);
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (VertexId w : g.neighbors(u))
        if (seen.insert(w).second) {
          comp.insert(w);
          q.push(w);
        }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

inline bool is_connected(const Graph& g) { return components(g).size() <= 1; }

inline bool is_independent(const Graph& g, const VertexSet& r) {
  for (VertexId u : r)
    for (VertexId w : g.neighbors(u))
      if (r.contains(w)) return false;
  return true;
}

inline bool is_tree(const Graph& g) {
  return !g.empty() && g.size() + 1 == g.order() && is_connected(g);
}

inline bool is_path(const Graph& g) {
  if (!is_tree(g)) return false;
  for (VertexId v : g.vertices())
    if (g.degree(v) > 2) return false;
  return true;
}

inline bool is_cycle(const Graph& g) {
  if (g.order() < 3 || g.size() != g.order() || !is_connected(g)) return false;
  for (VertexId v : g.vertices())
    if (g.degree(v) != 2) return false;
  return true;
}

namespace detail {
inline void require_subset(const Graph& g, const VertexSet& r) {
  for (VertexId v : r)
    if (!g.contains(v)) throw std::invalid_argument("vertex " + std::to_string(v) + " is not in the graph");
}
}  // namespace detail

/// Low-round elimination: completes the neighbourhood of every vertex in the
/// independent set `r`, then deletes `r`. An empty `r` is the identity.
inline Graph eliminate_low(const Graph& g, const VertexSet& r) {
  detail::require_subset(g, r);
  if (!is_independent(g, r)) throw std::invalid_argument("eliminate_low needs an independent set");
  Graph out = g;
  for (VertexId x : r) {
    const auto& nx = g.neighbors(x);
    for (std::size_t i = 0; i < nx.size(); ++i)
      for (std::size_t j = i + 1; j < nx.size(); ++j) out.add_edge(nx[i], nx[j]);
  }
  for (VertexId x : r) out.remove_vertex(x);
  return out;
}

/// High-round deletion: removes `r`, which may meet each component at most once.
inline Graph delete_high(const Graph& g, const VertexSet& r) {
  detail::require_subset(g, r);
  for (const auto& comp : components(g)) {
    std::size_t hits = 0;
    for (VertexId v : r) hits += comp.contains(v) ? 1 : 0;
    if (hits > 1) throw std::invalid_argument("delete_high removes two vertices of one component");
  }
  Graph out = g;
  for (VertexId x : r) out.remove_vertex(x);
  return out;
}

struct Contraction {
  Graph graph;
  MinorMap minor;
  VertexId merged;
};

/// Contracts the edge uv into a fresh vertex w with U(w) = U(u) ∪ U(v).
inline Contraction contract_edge(const Graph& g, VertexId u, VertexId v, const MinorMap& m) {
  if (!g.adjacent(u, v)) throw std::invalid_argument("contract_edge needs an edge");
  Contraction c{g, m, 0};
  VertexSet nbrs;
  for (VertexId x : g.neighbors(u)) nbrs.insert(x);
  for (VertexId x : g.neighbors(v)) nbrs.insert(x);
  nbrs.erase(u);
  nbrs.erase(v);
  c.graph.remove_vertex(u);
  c.graph.remove_vertex(v);
  c.merged = c.graph.add_vertex();
  for (VertexId x : nbrs) c.graph.add_edge(c.merged, x);
  VertexSet merged_origin = m.of(u);
  merged_origin.merge(m.of(v));
  c.minor.origin.erase(u);
  c.minor.origin.erase(v);
  c.minor.origin[c.merged] = std::move(merged_origin);
  return c;
}

/// Maximum number of leaves of a subtree of g (exact, exponential in |V|).
///
/// A subtree with at least three vertices has a connected set I of internal
/// vertices and all its leaves in N(I) \ I; conversely any connected I extends
/// to a subtree whose leaves include N(I) \ I. So the answer is the maximum of
/// |N(I) \ I| over connected nonempty I, or 2 when g only has single edges.
inline std::size_t max_subtree_leaves(const Graph& g, std::size_t cap = 12) {
  const auto vs = g.vertices();
  const std::size_t n = vs.size();
  if (n > cap) throw CapExceeded("max_subtree_leaves: " + std::to_string(n) + " vertices exceeds cap " + std::to_string(cap));
  if (n == 0) return 0;
  if (n == 1) return 1;
  std::vector<std::uint32_t> nbr(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g.adjacent(vs[i], vs[j])) nbr[i] |= 1u << j;

  auto connected = [&](std::uint32_t set) {
    std::uint32_t reach = set & (~set + 1);
    for (;;) {
      std::uint32_t next = reach;
      for (std::size_t i = 0; i < n; ++i)
        if (reach >> i & 1u) next |= nbr[i] & set;
      if (next == reach) return reach == set;
      reach = next;
    }
  };

  std::size_t best = g.size() > 0 ? 2 : 1;
  for (std::uint32_t set = 1; set < (1u << n); ++set) {
    if (!connected(set)) continue;
    std::uint32_t boundary = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (set >> i & 1u) boundary |= nbr[i];
    boundary &= ~set;
    best = std::max<std::size_t>(best, static_cast<std::size_t>(std::popcount(boundary)));
  }
  return best;
}

/// A subtree attaining max_subtree_leaves: a BFS tree on the best connected
/// internal set I with every vertex of N(I) \ I hung off it as a leaf.
inline Graph max_leaf_subtree(const Graph& g, std::size_t cap = 12) {
  const auto vs = g.vertices();
  const std::size_t n = vs.size();
  if (n > cap) throw CapExceeded("max_leaf_subtree: " + std::to_string(n) + " vertices exceeds cap " + std::to_string(cap));
  if (n == 0) throw std::invalid_argument("max_leaf_subtree of an empty graph");
  const std::size_t target = max_subtree_leaves(g, cap);
  Graph tree;
  if (target <= 2) {
    for (VertexId v : vs)
      for (VertexId w : g.neighbors(v)) {
        tree.add_vertex(v);
        tree.add_vertex(w);
        tree.add_edge(v, w);
        return tree;
      }
    tree.add_vertex(vs.front());
    return tree;
  }
  for (std::uint32_t set = 1; set < (1u << n); ++set) {
    VertexSet inside;
    for (std::size_t i = 0; i < n; ++i)
      if (set >> i & 1u) inside.insert(vs[i]);
    if (!is_connected(g.induced(inside))) continue;
    VertexSet boundary;
    for (VertexId v : inside)
      for (VertexId w : g.neighbors(v))
        if (!inside.contains(w)) boundary.insert(w);
    if (boundary.size() != target) continue;
    std::map<VertexId, VertexId> parent{{*inside.begin(), *inside.begin()}};
    std::vector<VertexId> queue{*inside.begin()};
    for (std::size_t h = 0; h < queue.size(); ++h)
      for (VertexId w : g.neighbors(queue[h]))
        if (inside.contains(w) && !parent.contains(w)) {
          parent[w] = queue[h];
          queue.push_back(w);
        }
    for (VertexId b : boundary)
      for (VertexId w : g.neighbors(b))
        if (inside.contains(w)) {
          parent[b] = w;
          break;
        }
    std::vector<VertexId> ids;
    for (auto [v, _] : parent) ids.push_back(v);
    std::vector<Edge> edges;
    for (auto [v, up] : parent)
      if (v != up) edges.emplace_back(v, up);
    return Graph::from_edges(ids, edges);
  }
  throw std::logic_error("max_leaf_subtree: no subtree found");
}

}  // namespace rankduel
