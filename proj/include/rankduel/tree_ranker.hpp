#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "rankduel/errors.hpp"
#include "rankduel/game.hpp"
#include "rankduel/graph.hpp"
#include "rankduel/ranking.hpp"
#include "rankduel/strategies.hpp"

namespace rankduel {

/// 2^(p+2) - 2p - 4: the leaf count from which a tree with p internal
/// vertices is shown to have list ranking number equal to its leaf count.
inline long long leafy_threshold(int p) {
  if (p < 0 || p > 60) throw std::invalid_argument("threshold defined for 0 <= p <= 60");
  return (1LL << (p + 2)) - 2LL * p - 4;
}

/// Leaves of a tree counted as vertices of degree at most 1, so that a
/// single vertex counts as a leaf.
inline VertexSet tree_leaves(const Graph& t) {
  VertexSet out;
  for (VertexId v : t.vertices())
    if (t.degree(v) <= 1) out.insert(v);
  return out;
}

struct TreePart {
  /// Vertex set of T_u.
  VertexSet vertices;
  int p_u = 0;
  int q_u = 0;
  /// Leaves of T_u that are leaves of the whole tree.
  int q_prime = 0;
  /// Set when T_u is borrowed from the chain vertex w next to a branch vertex.
  std::optional<VertexId> borrowed_from;
};

struct TreeAnatomy {
  VertexSet internal;
  VertexSet leaves;
  int p = 0;
  int q = 0;
  std::map<VertexId, TreePart> parts;
  /// Internal vertex minimising q'_u (ties by id).
  VertexId pivot = 0;
};

namespace detail {

/// Component of t - cut containing start.
inline VertexSet side_of(const Graph& t, VertexId cut, VertexId start) {
  VertexSet seen{start};
  std::queue<VertexId> q;
  q.push(start);
  while (!q.empty()) {
    VertexId x = q.front();
    q.pop();
    for (VertexId y : t.neighbors(x))
      if (y != cut && seen.insert(y).second) q.push(y);
  }
  return seen;
}

inline TreePart measure_part(const Graph& t, const VertexSet& part, const VertexSet& tree_leaves_set) {
  TreePart out;
  out.vertices = part;
  const Graph sub = t.induced(part);
  for (VertexId x : part) {
    if (sub.degree(x) <= 1)
      ++out.q_u;
    else
      ++out.p_u;
    if (tree_leaves_set.contains(x)) ++out.q_prime;
  }
  return out;
}

}  // namespace detail

/// For each internal vertex u: T_u is the component of T - u with the most
/// leaves of T (ties by least vertex id), except that an internal vertex on a
/// pendant chain without branch vertices on both sides borrows T_w from the
/// chain vertex w adjacent to the nearest branch vertex.
inline TreeAnatomy analyze_tree(const Graph& t) {
  if (!is_tree(t)) throw std::invalid_argument("analyze_tree needs a tree");
  TreeAnatomy a;
  VertexSet branch;
  for (VertexId v : t.vertices()) {
    if (t.degree(v) >= 2) a.internal.insert(v);
    if (t.degree(v) <= 1) a.leaves.insert(v);
    if (t.degree(v) >= 3) branch.insert(v);
  }
  a.p = static_cast<int>(a.internal.size());
  a.q = static_cast<int>(a.leaves.size());
  if (a.internal.empty()) throw std::invalid_argument("analyze_tree needs an internal vertex");

  auto largest_side = [&](VertexId u) {
    VertexSet best;
    int best_leaves = -1;
    for (VertexId w : t.neighbors(u)) {
      VertexSet side = detail::side_of(t, u, w);
      int leaves = 0;
      for (VertexId x : side) leaves += a.leaves.contains(x) ? 1 : 0;
      if (leaves > best_leaves || (leaves == best_leaves && *side.begin() < *best.begin())) {
        best = std::move(side);
        best_leaves = leaves;
      }
    }
    return best;
  };
  auto has_branch = [&](const VertexSet& s) {
    return std::any_of(s.begin(), s.end(), [&](VertexId x) { return branch.contains(x); });
  };

  for (VertexId u : a.internal) {
    bool direct = branch.empty() || branch.contains(u);
    for (VertexId w : t.neighbors(u)) direct = direct || branch.contains(w);
    if (!direct) {
      // Degree 2 here: direct when both sides reach a branch vertex.
      const auto& nb = t.neighbors(u);
      direct = has_branch(detail::side_of(t, u, nb[0])) && has_branch(detail::side_of(t, u, nb[1]));
    }
    if (direct) {
      a.parts[u] = detail::measure_part(t, largest_side(u), a.leaves);
      continue;
    }
    // Walk towards the branch side until the next vertex is a branch vertex.
    const auto& nb = t.neighbors(u);
    VertexId prev = u;
    VertexId cur = has_branch(detail::side_of(t, u, nb[0])) ? nb[0] : nb[1];
    while (true) {
      bool next_is_branch = false;
      VertexId next = cur;
      for (VertexId y : t.neighbors(cur))
        if (y != prev) {
          next = y;
          next_is_branch = branch.contains(y);
        }
      if (next_is_branch) break;
      prev = cur;
      cur = next;
    }
    TreePart part = detail::measure_part(t, largest_side(cur), a.leaves);
    part.borrowed_from = cur;
    a.parts[u] = std::move(part);
  }
  a.pivot = *a.internal.begin();
  for (VertexId u : a.internal)
    if (a.parts[u].q_prime < a.parts[a.pivot].q_prime) a.pivot = u;
  return a;
}

struct SpecialWitness {
  VertexId u = 0;
  int m_u = 0;
  /// Witness leaves u_1..u_p and their labels e_1 < ... < e_p < m_u.
  std::vector<VertexId> leaves;
  std::vector<int> labels;
};

namespace detail {

/// Small max-flow by repeated augmenting paths on a capacity matrix.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t n) : cap_(n, std::vector<int>(n, 0)) {}
  void add(std::size_t a, std::size_t b, int c) { cap_[a][b] += c; }

  int run(std::size_t s, std::size_t t, int limit) {
    int flow = 0;
    const std::size_t n = cap_.size();
    while (flow < limit) {
      std::vector<std::size_t> parent(n, n);
      parent[s] = s;
      std::queue<std::size_t> q;
      q.push(s);
      while (!q.empty() && parent[t] == n) {
        std::size_t x = q.front();
        q.pop();
        for (std::size_t y = 0; y < n; ++y)
          if (parent[y] == n && cap_[x][y] > 0) {
            parent[y] = x;
            q.push(y);
          }
      }
      if (parent[t] == n) break;
      for (std::size_t y = t; y != s; y = parent[y]) {
        --cap_[parent[y]][y];
        ++cap_[y][parent[y]];
      }
      ++flow;
    }
    return flow;
  }

  /// Residual reverse capacity: positive when flow went a -> b.
  int reverse(std::size_t a, std::size_t b) const { return cap_[b][a]; }

 private:
  std::vector<std::vector<int>> cap_;
};

}  // namespace detail

/// Whether u is special for l, with a witness. Witness leaves are leaves of
/// both T and T_u; every internal vertex of T_u keeps two neighbours in T_u
/// outside the witnesses; the leaves take distinct labels below max L(u).
/// Solved as a flow from labels through leaves to their T_u parents.
inline std::optional<SpecialWitness> special_witness(const Graph& t, const TreeAnatomy& a, const ListAssignment& l,
                                                     VertexId u) {
  const TreePart& part = a.parts.at(u);
  if (2 * part.q_prime < a.q) return std::nullopt;
  const int m_u = *l.at(u).rbegin();
  const Graph sub = t.induced(part.vertices);

  std::vector<VertexId> cand;
  for (VertexId x : part.vertices)
    if (a.leaves.contains(x)) cand.push_back(x);
  std::vector<int> labels;
  for (VertexId x : cand)
    for (int c : l.at(x))
      if (c < m_u) labels.push_back(c);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  std::vector<VertexId> parents;
  for (VertexId x : part.vertices)
    if (sub.degree(x) >= 2) parents.push_back(x);

  // Nodes: source, sink, labels, candidate leaves, T_u internal vertices.
  const std::size_t src = 0, snk = 1, lab0 = 2, leaf0 = lab0 + labels.size(), par0 = leaf0 + cand.size();
  detail::FlowNetwork net(par0 + parents.size());
  for (std::size_t i = 0; i < labels.size(); ++i) net.add(src, lab0 + i, 1);
  for (std::size_t j = 0; j < cand.size(); ++j) {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (l.at(cand[j]).contains(labels[i])) net.add(lab0 + i, leaf0 + j, 1);
    std::optional<std::size_t> parent;
    for (VertexId y : sub.neighbors(cand[j])) {
      auto it = std::find(parents.begin(), parents.end(), y);
      if (it != parents.end()) parent = static_cast<std::size_t>(it - parents.begin());
    }
    net.add(leaf0 + j, parent ? par0 + *parent : snk, 1);
  }
  for (std::size_t k = 0; k < parents.size(); ++k) {
    const int spare = static_cast<int>(sub.degree(parents[k])) - 2;
    if (spare > 0) net.add(par0 + k, snk, spare);
  }
  if (net.run(src, snk, a.p) < a.p) return std::nullopt;

  std::vector<std::pair<int, VertexId>> chosen;
  for (std::size_t j = 0; j < cand.size(); ++j)
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (net.reverse(lab0 + i, leaf0 + j) > 0) chosen.emplace_back(labels[i], cand[j]);
  std::sort(chosen.begin(), chosen.end());
  SpecialWitness w;
  w.u = u;
  w.m_u = m_u;
  for (auto [c, x] : chosen) {
    w.labels.push_back(c);
    w.leaves.push_back(x);
  }
  return w;
}

/// The special vertex used by the construction: the least-id special vertex,
/// moved along its chain to the special vertex nearest the chain's end w
/// when its T_u is borrowed.
inline std::optional<SpecialWitness> choose_special(const Graph& t, const TreeAnatomy& a, const ListAssignment& l) {
  for (VertexId u : a.internal) {
    auto w = special_witness(t, a, l, u);
    if (!w) continue;
    const auto& part = a.parts.at(u);
    if (!part.borrowed_from) return w;
    // Walk from the chain end towards u and take the first special vertex.
    const VertexId end = *part.borrowed_from;
    std::map<VertexId, VertexId> parent;
    std::queue<VertexId> q;
    q.push(end);
    parent[end] = end;
    while (!q.empty()) {
      VertexId x = q.front();
      q.pop();
      for (VertexId y : t.neighbors(x))
        if (!parent.contains(y)) {
          parent[y] = x;
          q.push(y);
        }
    }
    std::vector<VertexId> walk{u};
    while (walk.back() != end) walk.push_back(parent[walk.back()]);
    std::reverse(walk.begin(), walk.end());
    for (VertexId x : walk)
      if (auto wx = special_witness(t, a, l, x)) return wx;
    return w;
  }
  return std::nullopt;
}

/// Distinct labels for the given vertices from their allowed sets, by
/// bipartite augmenting paths; vertices are tried in the given order.
inline std::optional<Ranking> distinct_labels(const std::vector<VertexId>& vs,
                                              const std::map<VertexId, std::set<int>>& allowed) {
  std::map<int, VertexId> owner;
  std::function<bool(VertexId, std::set<int>&)> augment = [&](VertexId v, std::set<int>& seen) {
    for (int c : allowed.at(v)) {
      if (!seen.insert(c).second) continue;
      auto it = owner.find(c);
      if (it == owner.end() || augment(it->second, seen)) {
        owner[c] = v;
        return true;
      }
    }
    return false;
  };
  for (VertexId v : vs) {
    std::set<int> seen;
    if (!augment(v, seen)) return std::nullopt;
  }
  Ranking out;
  for (auto [c, v] : owner) out[v] = c;
  return out;
}

struct LeafyTreeReport {
  Ranking ranking;
  /// "distinct", "game", "no-special", "no-special-top", "special", or "fallback".
  std::string route;
  std::vector<std::string> defects;
};

namespace detail {

inline std::map<VertexId, std::set<int>> minus(const ListAssignment& l, const std::vector<VertexId>& vs,
                                               const std::function<bool(int)>& banned) {
  std::map<VertexId, std::set<int>> out;
  for (VertexId v : vs) {
    auto& s = out[v];
    for (int c : l.at(v))
      if (!banned(c)) s.insert(c);
  }
  return out;
}

inline LeafyTreeReport rank_leafy_tree_impl(const Graph& t, const ListAssignment& l, bool allow_fallback);

inline LeafyTreeReport rank_by_game(const Graph& t, const ListAssignment& l) {
  LeafyTreeReport rep;
  rep.route = "game";
  const GameState start = list_game_state(t, l, GameVariant::high_only);
  const Transcript tr = play_game(start, list_as_taxer(l, GameVariant::high_only), compose_components(ranker_star));
  if (tr.outcome != Outcome::ranker_win || tr.forfeit) {
    rep.defects.push_back("star Ranker lost the list game" + (tr.reason.empty() ? "" : ": " + tr.reason));
    return rep;
  }
  rep.ranking = extract_list_ranking(tr);
  return rep;
}

inline LeafyTreeReport rank_without_special(const Graph& t, const TreeAnatomy& a, const ListAssignment& l) {
  LeafyTreeReport rep;
  const VertexId v = a.pivot;
  const int m_v = *l.at(v).rbegin();
  int top = 0;
  for (const auto& [x, s] : l) top = std::max(top, *s.rbegin());
  const bool small_pivot = 2 * a.parts.at(v).q_prime < a.q;

  if (small_pivot && m_v == top) {
    rep.route = "no-special-top";
    rep.ranking[v] = m_v;
    for (VertexId w : t.neighbors(v)) {
      const VertexSet side = side_of(t, v, w);
      const std::vector<VertexId> vs(side.begin(), side.end());
      auto lab = distinct_labels(vs, minus(l, vs, [&](int c) { return c == m_v; }));
      if (!lab) {
        rep.defects.push_back("a component around the pivot has no distinct labelling");
        return rep;
      }
      rep.ranking.insert(lab->begin(), lab->end());
    }
    return rep;
  }

  rep.route = "no-special";
  if (!(a.q - 4 * a.p + 2 > 2 * a.p)) rep.defects.push_back("leaf count too small for the internal-list bound");
  const std::vector<VertexId> leaves(a.leaves.begin(), a.leaves.end());
  std::map<VertexId, std::set<int>> leaf_lists;
  for (VertexId x : leaves) leaf_lists[x] = l.at(x);
  std::optional<Ranking> leaf_labels;
  // Prefer a labelling in which some leaf exceeds m_v.
  for (VertexId x : leaves) {
    for (int c : l.at(x)) {
      if (c <= m_v) continue;
      auto fixed = leaf_lists;
      fixed[x] = {c};
      std::vector<VertexId> order{x};
      for (VertexId y : leaves)
        if (y != x) order.push_back(y);
      if ((leaf_labels = distinct_labels(order, fixed))) break;
    }
    if (leaf_labels) break;
  }
  if (!leaf_labels) leaf_labels = distinct_labels(leaves, leaf_lists);
  if (!leaf_labels) {
    rep.defects.push_back("leaves have no distinct labelling");
    return rep;
  }
  std::set<int> used;
  for (auto [x, c] : *leaf_labels) used.insert(c);
  const std::vector<VertexId> internal(a.internal.begin(), a.internal.end());
  auto inner = distinct_labels(internal, minus(l, internal, [&](int c) { return used.contains(c); }));
  if (!inner) {
    rep.defects.push_back("internal vertices have no labels distinct from the leaves");
    return rep;
  }
  rep.ranking = *leaf_labels;
  rep.ranking.insert(inner->begin(), inner->end());
  return rep;
}

inline LeafyTreeReport rank_with_special(const Graph& t, const TreeAnatomy& a, const ListAssignment& l,
                                         const SpecialWitness& w) {
  LeafyTreeReport rep;
  rep.route = "special";
  const TreePart& part = a.parts.at(w.u);
  rep.ranking[w.u] = w.m_u;
  for (std::size_t i = 0; i < w.leaves.size(); ++i) rep.ranking[w.leaves[i]] = w.labels[i];

  VertexSet rest = part.vertices;
  for (VertexId x : w.leaves) rest.erase(x);
  const int k = part.q_u - a.p;
  if (k < leafy_threshold(std::max(a.p - 1, 0)))
    rep.defects.push_back("recursive leaf count " + std::to_string(k) + " below the threshold for p-1");
  const std::set<int> taken(w.labels.begin(), w.labels.end());
  ListAssignment sub_lists;
  for (VertexId x : rest) {
    auto& s = sub_lists[x];
    for (int c : l.at(x)) {
      if (c == w.m_u || taken.contains(c)) continue;
      if (static_cast<int>(s.size()) == k) break;
      s.insert(c);
    }
    if (static_cast<int>(s.size()) < k) {
      rep.defects.push_back("a list inside T_u is shorter than the recursive uniform size");
      return rep;
    }
  }
  const Graph sub = t.induced(rest);
  if (static_cast<int>(tree_leaves(sub).size()) != k) {
    rep.defects.push_back("recursive subtree does not have the expected leaf count");
    return rep;
  }
  LeafyTreeReport inner = rank_leafy_tree_impl(sub, sub_lists, false);
  for (const auto& d : inner.defects) rep.defects.push_back("recursion: " + d);
  if (!inner.defects.empty()) return rep;
  rep.ranking.insert(inner.ranking.begin(), inner.ranking.end());

  // A: beyond u away from T_u. A': between u and T_u.
  std::vector<VertexId> beyond, between;
  for (VertexId y : t.neighbors(w.u)) {
    const VertexSet side = side_of(t, w.u, y);
    const bool holds_part = side.contains(*part.vertices.begin());
    for (VertexId x : side) {
      if (!holds_part)
        beyond.push_back(x);
      else if (!part.vertices.contains(x))
        between.push_back(x);
    }
  }
  std::set<int> high_used;
  for (auto [x, c] : rep.ranking)
    if (c >= w.m_u) high_used.insert(c);
  auto lab_a = distinct_labels(beyond, minus(l, beyond, [&](int c) { return high_used.contains(c); }));
  if (!lab_a) {
    rep.defects.push_back("vertices beyond u have no distinct labelling");
    return rep;
  }
  rep.ranking.insert(lab_a->begin(), lab_a->end());
  std::set<int> used;
  for (auto [x, c] : rep.ranking) used.insert(c);
  auto lab_b = distinct_labels(between, minus(l, between, [&](int c) { return used.contains(c); }));
  if (!lab_b) {
    rep.defects.push_back("vertices between u and T_u have no unused labels");
    return rep;
  }
  rep.ranking.insert(lab_b->begin(), lab_b->end());
  return rep;
}

inline LeafyTreeReport rank_leafy_tree_impl(const Graph& t, const ListAssignment& l, bool allow_fallback) {
  if (!is_tree(t)) throw PreconditionError("rank_leafy_tree needs a tree");
  const VertexSet leaves = tree_leaves(t);
  const int q = static_cast<int>(leaves.size());
  const int p = static_cast<int>(t.order()) - q;
  for (VertexId v : t.vertices()) {
    auto it = l.find(v);
    if (it == l.end() || static_cast<int>(it->second.size()) != q)
      throw PreconditionError("lists must all have size equal to the leaf count " + std::to_string(q));
  }
  if (p >= 3 && q < leafy_threshold(p))
    throw PreconditionError("too few leaves: need at least " + std::to_string(leafy_threshold(p)));
  if ((p == 1 || p == 2) && !(p < std::min(3, q)))
    throw PreconditionError("a tree with 1 or 2 internal vertices needs more leaves than internal vertices");

  LeafyTreeReport rep;
  if (p == 0) {
    const auto vs = t.vertices();
    auto lab = distinct_labels(vs, std::map<VertexId, std::set<int>>(l.begin(), l.end()));
    rep.route = "distinct";
    if (lab)
      rep.ranking = *lab;
    else
      rep.defects.push_back("no distinct labelling");
  } else if (p <= 2) {
    rep = rank_by_game(t, l);
  } else {
    const TreeAnatomy a = analyze_tree(t);
    if (auto w = choose_special(t, a, l))
      rep = rank_with_special(t, a, l, *w);
    else
      rep = rank_without_special(t, a, l);
  }
  if (rep.defects.empty() && !is_list_ranking(t, l, rep.ranking))
    rep.defects.push_back("constructed labelling is not an L-ranking");
  if (!rep.defects.empty() && allow_fallback) {
    auto found = find_list_ranking(t, l, t.order());
    if (!found) throw std::logic_error("no L-ranking exists for an input meeting the leaf-count hypothesis");
    rep.ranking = *found;
    rep.route = "fallback";
  }
  return rep;
}

}  // namespace detail

/// L-ranking of a tree from lists whose size equals its leaf count, by the
/// construction for trees with many leaves. Records any internal shortfall
/// as a defect and then falls back to exhaustive search.
inline LeafyTreeReport rank_leafy_tree_report(const Graph& t, const ListAssignment& l) {
  return detail::rank_leafy_tree_impl(t, l, true);
}

inline Ranking rank_leafy_tree(const Graph& t, const ListAssignment& l) { return rank_leafy_tree_report(t, l).ranking; }

}  // namespace rankduel
