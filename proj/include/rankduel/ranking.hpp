#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankduel/errors.hpp"
#include "rankduel/graph.hpp"

namespace rankduel {

/// Vertex labels; a ranking when every path between equal labels has a larger interior label.
using Ranking = std::map<VertexId, int>;
/// Per-vertex token counts (or list sizes f).
using TokenFunction = std::map<VertexId, int>;
/// Per-vertex sets of permitted labels.
using ListAssignment = std::map<VertexId, std::set<int>>;

inline TokenFunction constant_tokens(const Graph& g, int k) {
  TokenFunction f;
  for (VertexId v : g.vertices()) f[v] = k;
  return f;
}

/// Tokens given in vertex-id order, e.g. {3,1,2,3} on a path.
inline TokenFunction tokens_in_order(const Graph& g, const std::vector<int>& values) {
  const auto vs = g.vertices();
  if (vs.size() != values.size()) throw std::invalid_argument("token vector length does not match the vertex count");
  TokenFunction f;
  for (std::size_t i = 0; i < vs.size(); ++i) f[vs[i]] = values[i];
  return f;
}

/// L(v) = {1, ..., f(v)}.
inline ListAssignment prefix_lists(const TokenFunction& f) {
  ListAssignment l;
  for (auto [v, k] : f) {
    auto& s = l[v];
    for (int c = 1; c <= k; ++c) s.insert(c);
  }
  return l;
}

/// True iff, for each label c, every component of the subgraph induced by
/// labels <= c holds at most one vertex labelled c.
inline bool is_ranking(const Graph& g, const Ranking& a) {
  std::set<int> labels;
  for (VertexId v : g.vertices()) {
    auto it = a.find(v);
    if (it == a.end()) throw std::invalid_argument("labeling is not total: vertex " + std::to_string(v) + " unlabeled");
    if (it->second < 1) throw std::invalid_argument("labels must be positive");
    labels.insert(it->second);
  }
  for (int c : labels) {
    VertexSet seen;
    for (VertexId s : g.vertices()) {
      if (a.at(s) > c || seen.contains(s)) continue;
      int top = 0;
      std::queue<VertexId> q;
      q.push(s);
      seen.insert(s);
      while (!q.empty()) {
        VertexId u = q.front();
        q.pop();
        if (a.at(u) == c && ++top > 1) return false;
        for (VertexId w : g.neighbors(u))
          if (a.at(w) <= c && seen.insert(w).second) q.push(w);
      }
    }
  }
  return true;
}

/// Checks both ranking validity and that each label is drawn from its list.
inline bool is_list_ranking(const Graph& g, const ListAssignment& l, const Ranking& a) {
  for (VertexId v : g.vertices()) {
    auto it = a.find(v);
    auto lt = l.find(v);
    if (it == a.end() || lt == l.end() || !lt->second.contains(it->second)) return false;
  }
  return is_ranking(g, a);
}

/// Ranking number (tree-depth) by memoised search over vertex subsets.
inline int tree_depth(const Graph& g, std::size_t cap = 15) {
  const auto vs = g.vertices();
  const std::size_t n = vs.size();
  if (n > cap) throw CapExceeded("tree_depth: " + std::to_string(n) + " vertices exceeds cap " + std::to_string(cap));
  if (n == 0) return 0;
  std::vector<std::uint32_t> nbr(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (VertexId w : g.neighbors(vs[i]))
      nbr[i] |= 1u << static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), w) - vs.begin());
  std::vector<std::int8_t> memo(std::size_t{1} << n, -1);

  auto component_of = [&](std::uint32_t set, std::uint32_t seed) {
    std::uint32_t reach = seed;
    for (;;) {
      std::uint32_t next = reach;
      for (std::uint32_t r = reach; r; r &= r - 1) next |= nbr[std::countr_zero(r)] & set;
      if (next == reach) return reach;
      reach = next;
    }
  };

  auto solve = [&](auto& self, std::uint32_t set) -> int {
    if (set == 0) return 0;
    auto& slot = memo[set];
    if (slot >= 0) return slot;
    const std::uint32_t first = component_of(set, set & (~set + 1));
    int best;
    if (first != set) {
      best = 0;
      for (std::uint32_t rest = set; rest;) {
        const std::uint32_t comp = component_of(set, rest & (~rest + 1));
        best = std::max(best, self(self, comp));
        rest &= ~comp;
      }
    } else if (std::popcount(set) == 1) {
      best = 1;
    } else {
      best = static_cast<int>(n) + 1;
      for (std::uint32_t r = set; r; r &= r - 1) {
        const std::uint32_t bit = r & (~r + 1);
        best = std::min(best, 1 + self(self, set & ~bit));
      }
    }
    slot = static_cast<std::int8_t>(best);
    return best;
  };
  return solve(solve, (n == 32 ? ~0u : (1u << n) - 1));
}

/// Backtracking search for an L-ranking. Vertices are assigned in descending
/// degree order (ties by id); a partial assignment is abandoned as soon as the
/// assigned vertices alone contain a path between equal labels whose interior
/// labels are all smaller.
inline std::optional<Ranking> find_list_ranking(const Graph& g, const ListAssignment& l, std::size_t cap = 14) {
  auto order = g.vertices();
  if (order.size() > cap)
    throw CapExceeded("find_list_ranking: " + std::to_string(order.size()) + " vertices exceeds cap " + std::to_string(cap));
  for (VertexId v : order) {
    auto it = l.find(v);
    if (it == l.end()) throw std::invalid_argument("list assignment misses vertex " + std::to_string(v));
    if (it->second.empty()) return std::nullopt;
  }
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return g.degree(a) > g.degree(b); });

  std::map<VertexId, int> label;  // assigned so far

  // Component of v inside {assigned, label < bound}; counts distinct boundary
  // vertices (other than v) carrying exactly `target`.
  auto boundary_hits = [&](VertexId v, int bound, int target) {
    VertexSet seen{v};
    VertexSet hits;
    std::queue<VertexId> q;
    q.push(v);
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (VertexId w : g.neighbors(u)) {
        auto it = label.find(w);
        if (it == label.end() || w == v) continue;
        if (it->second == target) hits.insert(w);
        if (it->second < bound && seen.insert(w).second) q.push(w);
      }
    }
    return hits.size();
  };

  auto consistent = [&](VertexId v, int c) {
    if (boundary_hits(v, c, c) > 0) return false;
    std::set<int> above;
    for (auto [u, d] : label)
      if (d > c) above.insert(d);
    for (int d : above)
      if (boundary_hits(v, d, d) > 1) return false;
    return true;
  };

  auto search = [&](auto& self, std::size_t i) -> bool {
    if (i == order.size()) return true;
    const VertexId v = order[i];
    for (int c : l.at(v)) {
      label[v] = c;
      if (consistent(v, c) && self(self, i + 1)) return true;
      label.erase(v);
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return Ranking(label.begin(), label.end());
}

enum class FRankability { rankable, not_rankable, empty_list };

/// f-rankability with the zero-token case reported separately.
inline FRankability f_rankability(const Graph& g, const TokenFunction& f, std::size_t cap = 14) {
  for (VertexId v : g.vertices()) {
    auto it = f.find(v);
    if (it == f.end()) throw std::invalid_argument("token function misses vertex " + std::to_string(v));
    if (it->second <= 0) return FRankability::empty_list;
  }
  return find_list_ranking(g, prefix_lists(f), cap) ? FRankability::rankable : FRankability::not_rankable;
}

inline bool is_f_rankable(const Graph& g, const TokenFunction& f, std::size_t cap = 14) {
  return f_rankability(g, f, cap) == FRankability::rankable;
}

namespace detail {

/// Graph on at most 16 indexed vertices, as used by the label-by-label
/// elimination view of list ranking: labels are processed in increasing
/// order and each label class must be independent in the current filled graph.
struct MaskGraph {
  std::uint16_t alive = 0;
  std::vector<std::uint16_t> adj;

  friend auto operator<=>(const MaskGraph&, const MaskGraph&) = default;
};

inline MaskGraph to_mask_graph(const Graph& g, const std::vector<VertexId>& vs) {
  MaskGraph m;
  m.adj.assign(vs.size(), 0);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    m.alive |= static_cast<std::uint16_t>(1u << i);
    for (std::size_t j = 0; j < vs.size(); ++j)
      if (g.adjacent(vs[i], vs[j])) m.adj[i] |= static_cast<std::uint16_t>(1u << j);
  }
  return m;
}

inline MaskGraph eliminate(const MaskGraph& g, std::uint16_t r) {
  MaskGraph out = g;
  for (std::uint16_t rr = r; rr; rr &= rr - 1) {
    const int x = std::countr_zero(rr);
    const std::uint16_t nx = g.adj[x];
    for (std::uint16_t a = nx; a; a &= a - 1) {
      const int y = std::countr_zero(a);
      out.adj[y] |= static_cast<std::uint16_t>(nx & ~(1u << y));
    }
  }
  out.alive &= static_cast<std::uint16_t>(~r);
  for (auto& row : out.adj) row &= out.alive;
  for (std::size_t i = 0; i < out.adj.size(); ++i)
    if (!(out.alive >> i & 1u)) out.adj[i] = 0;
  return out;
}

inline bool independent(const MaskGraph& g, std::uint16_t r) {
  for (std::uint16_t rr = r; rr; rr &= rr - 1)
    if (g.adj[std::countr_zero(rr)] & r) return false;
  return true;
}

/// All configurations reachable by labelling an independent subset of `column`.
inline void extend(const MaskGraph& g, std::uint16_t column, std::uint16_t must_leave,
                   std::set<MaskGraph>& out) {
  const std::uint16_t avail = column & g.alive;
  // Enumerate subsets of avail.
  std::uint16_t sub = avail;
  for (;;) {
    if (independent(g, sub)) {
      MaskGraph next = eliminate(g, sub);
      if ((next.alive & must_leave) == 0) out.insert(std::move(next));
    }
    if (sub == 0) break;
    sub = static_cast<std::uint16_t>((sub - 1) & avail);
  }
}

/// Exact L-rankability through the elimination view (independent of the
/// backtracking search in find_list_ranking).
inline bool rankable_by_elimination(const Graph& g, const ListAssignment& l) {
  const auto vs = g.vertices();
  if (vs.size() > 16) throw CapExceeded("rankable_by_elimination supports at most 16 vertices");
  std::map<int, std::uint16_t> columns;
  std::vector<int> last(vs.size(), 0);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& s = l.at(vs[i]);
    if (s.empty()) return false;
    for (int c : s) columns[c] |= static_cast<std::uint16_t>(1u << i);
    last[i] = *s.rbegin();
  }
  std::set<MaskGraph> states{to_mask_graph(g, vs)};
  for (auto [c, col] : columns) {
    std::uint16_t done = 0;
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (last[i] == c) done |= static_cast<std::uint16_t>(1u << i);
    std::set<MaskGraph> next;
    for (const auto& s : states) extend(s, col, done, next);
    if (next.empty()) return false;
    states = std::move(next);
  }
  return true;
}

/// Whether every k-uniform list assignment of g is rankable. Enumerates list
/// structures up to order isomorphism: a sequence of nonempty vertex sets
/// (one per label, in label order) with each vertex in exactly k of them.
/// The search carries the set of elimination states reachable so far and is
/// memoised on (remaining list slots, reachable states).
class UniformListSearch {
 public:
  UniformListSearch(const Graph& g, int k) : vs_(g.vertices()), start_(to_mask_graph(g, vs_)), k_(k) {
    if (vs_.size() > 16) throw CapExceeded("UniformListSearch supports at most 16 vertices");
  }

  bool all_rankable() {
    std::vector<int> rem(vs_.size(), k_);
    return search(rem, std::set<MaskGraph>{start_});
  }

  std::size_t states_visited() const { return memo_.size(); }

 private:
  bool search(std::vector<int>& rem, const std::set<MaskGraph>& states) {
    std::uint16_t open = 0;
    for (std::size_t i = 0; i < rem.size(); ++i)
      if (rem[i] > 0) open |= static_cast<std::uint16_t>(1u << i);
    if (open == 0) return true;

    std::vector<std::uint16_t> key(rem.begin(), rem.end());
    for (const auto& s : states) {
      key.push_back(s.alive);
      key.insert(key.end(), s.adj.begin(), s.adj.end());
    }
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    bool ok = true;
    for (std::uint16_t col = open; col && ok; col = static_cast<std::uint16_t>((col - 1) & open)) {
      std::uint16_t done = 0;
      for (std::uint16_t c = col; c; c &= c - 1) {
        const int i = std::countr_zero(c);
        if (--rem[i] == 0) done |= static_cast<std::uint16_t>(1u << i);
      }
      std::set<MaskGraph> next;
      for (const auto& s : states) extend(s, col, done, next);
      ok = !next.empty() && search(rem, next);
      for (std::uint16_t c = col; c; c &= c - 1) ++rem[std::countr_zero(c)];
    }
    memo_.emplace(std::move(key), ok);
    return ok;
  }

  std::vector<VertexId> vs_;
  MaskGraph start_;
  int k_;
  std::map<std::vector<std::uint16_t>, bool> memo_;
};

}  // namespace detail

/// Least k <= k_max such that every k-uniform list assignment admits an
/// L-ranking, or nullopt when that k exceeds k_max.
inline std::optional<int> list_ranking_number(const Graph& g, int k_max, std::size_t cap = 12) {
  const std::size_t n = g.order();
  if (n == 0) return 0;
  if (n * static_cast<std::size_t>(std::max(k_max, 0)) > cap)
    throw CapExceeded("list_ranking_number: n*k_max = " + std::to_string(n * static_cast<std::size_t>(k_max)) +
                      " exceeds cap " + std::to_string(cap));
  for (int k = 1; k <= k_max; ++k)
    if (detail::UniformListSearch(g, k).all_rankable()) return k;
  return std::nullopt;
}

/// The (q-1)-uniform assignment witnessing rho_l >= q for a subtree t with q
/// leaves: leaves of t get {q..2q-2}, every other vertex of g gets {1..q-1}.
inline ListAssignment treebound_lists(const Graph& g, const Graph& t) {
  if (!is_tree(t)) throw std::invalid_argument("treebound_lists needs a tree");
  for (VertexId v : t.vertices()) {
    if (!g.contains(v)) throw std::invalid_argument("subtree vertex not in graph");
    for (VertexId w : t.neighbors(v))
      if (!g.adjacent(v, w)) throw std::invalid_argument("subtree edge not in graph");
  }
  VertexSet leaves;
  for (VertexId v : t.vertices())
    if (t.degree(v) == 1) leaves.insert(v);
  const int q = static_cast<int>(leaves.size());
  if (q < 2) throw std::invalid_argument("treebound_lists needs a subtree with at least two leaves");
  ListAssignment l;
  for (VertexId v : g.vertices()) {
    auto& s = l[v];
    const int lo = leaves.contains(v) ? q : 1;
    for (int c = lo; c < lo + q - 1; ++c) s.insert(c);
  }
  return l;
}

}  // namespace rankduel
