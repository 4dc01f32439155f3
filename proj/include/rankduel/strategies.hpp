#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include "rankduel/dyadic.hpp"
#include "rankduel/errors.hpp"
#include "rankduel/game.hpp"
#include "rankduel/graph.hpp"
#include "rankduel/solver.hpp"

namespace rankduel {

// ---------------------------------------------------------------------------
// Potentials

inline Dyadic weight(int tokens) {
  if (tokens < 0) throw std::invalid_argument("negative token count");
  return Dyadic::pow2(-tokens);
}

/// Sum of 2^-f(v) over the given values.
inline Dyadic sigma(std::span<const int> values) {
  Dyadic s;
  for (int k : values) s += weight(k);
  return s;
}

inline Dyadic sigma(const TokenFunction& f, const VertexSet& vs) {
  Dyadic s;
  for (VertexId v : vs) s += weight(f.at(v));
  return s;
}

/// Sorts the values; with k the first position whose value repeats at k+1
/// (or the last position when all differ), returns the sum of 2^-f before k
/// plus twice the sum after k.
inline Dyadic tau(std::vector<int> values) {
  if (values.empty()) throw std::invalid_argument("tau of an empty set");
  std::sort(values.begin(), values.end());
  std::size_t k = values.size() - 1;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i] == values[i + 1]) {
      k = i;
      break;
    }
  Dyadic before, after;
  for (std::size_t i = 0; i < k; ++i) before += weight(values[i]);
  for (std::size_t i = k + 1; i < values.size(); ++i) after += weight(values[i]);
  return before + after.scaled(1);
}

inline Dyadic tau(const TokenFunction& f, const VertexSet& xs) {
  std::vector<int> values;
  for (VertexId v : xs) values.push_back(f.at(v));
  return tau(std::move(values));
}

/// 2^-ceil(log2 n) for n >= 1.
inline Dyadic inverse_ceil_pow2(std::size_t n) {
  int e = 0;
  while ((std::size_t{1} << e) < n) ++e;
  return Dyadic::pow2(-e);
}

/// The bound 1/2 + 2^-ceil(log2 n) under which cycles are won.
inline Dyadic cycle_sigma_bound(std::size_t n) { return Dyadic::pow2(-1) + inverse_ceil_pow2(n); }

// ---------------------------------------------------------------------------
// Orderings

/// Vertices of a path component from its least-id end; a single vertex alone.
inline std::vector<VertexId> path_order(const Graph& path) {
  if (!is_path(path)) throw PreconditionError("component is not a path");
  auto vs = path.vertices();
  VertexId start = vs.front();
  for (VertexId v : vs)
    if (path.degree(v) <= 1) {
      start = v;
      break;
    }
  std::vector<VertexId> order{start};
  while (order.size() < vs.size())
    for (VertexId w : path.neighbors(order.back()))
      if (order.size() < 2 || w != order[order.size() - 2]) {
        order.push_back(w);
        break;
      }
  return order;
}

/// Vertices of a cycle starting at `first`, continuing towards `second`.
inline std::vector<VertexId> cycle_walk(const Graph& cycle, VertexId first, VertexId second) {
  std::vector<VertexId> order{first, second};
  while (order.size() < cycle.order()) {
    const auto& nb = cycle.neighbors(order.back());
    order.push_back(nb[0] == order[order.size() - 2] ? nb[1] : nb[0]);
  }
  return order;
}

/// Visiting order used by the path Ranker in high rounds, as 0-based
/// positions along the path. Starts at the least position whose prefix has
/// sigma at least 1/2 and grows the visited interval one end at a time.
inline std::vector<std::size_t> path_high_ordering(std::span<const int> f) {
  const std::size_t n = f.size();
  if (n == 0) return {};
  std::size_t first = n - 1;
  Dyadic prefix;
  for (std::size_t i = 0; i < n; ++i) {
    prefix += weight(f[i]);
    if (prefix >= Dyadic::pow2(-1)) {
      first = i;
      break;
    }
  }
  std::vector<std::size_t> order{first};
  // Unvisited vertices are [0, s) and [t, n) with s = lo, t = hi + 1.
  std::size_t lo = first, hi = first;
  while (order.size() < n) {
    const bool has_left = lo > 0;
    const bool has_right = hi + 1 < n;
    bool take_left = false;
    if (has_left && !has_right) {
      take_left = true;
    } else if (has_left) {
      Dyadic load;
      for (std::size_t i = lo; i <= hi; ++i) load += weight(f[i]);
      for (std::size_t i = hi + 1; i < n; ++i) load += weight(f[i]).scaled(1);
      take_left = load < Dyadic::integer(1);
    }
    if (take_left) {
      order.push_back(--lo);
    } else {
      order.push_back(++hi);
    }
  }
  return order;
}

// ---------------------------------------------------------------------------
// Per-component Ranker rules. A rule answers the part of a Taxer move that
// lands in one component and returns the vertices to remove there.

using ComponentRule =
    std::function<VertexSet(const Graph& comp, const TokenFunction& tokens, const VertexSet& targets, RoundKind kind)>;

/// Splits each Taxer move by component and merges the per-component answers.
inline RankerStrategy compose_components(ComponentRule rule) {
  return [rule = std::move(rule)](const GameState& s, const TaxerMove& t) {
    RankerMove out;
    for (const auto& comp : components(s.graph)) {
      VertexSet hit;
      for (VertexId v : t.targets)
        if (comp.contains(v)) hit.insert(v);
      if (hit.empty()) continue;
      const VertexSet r = rule(s.graph.induced(comp), s.tokens, hit, t.kind);
      out.removed.insert(r.begin(), r.end());
    }
    return out;
  };
}

/// Sorting by tokens (ties by id) must give at least i tokens to the i-th
/// vertex; Ranker then removes the first targeted vertex in that order.
inline VertexSet sorted_distinct_rule(const Graph& g, const TokenFunction& tokens, const VertexSet& targets) {
  auto vs = g.vertices();
  std::stable_sort(vs.begin(), vs.end(), [&](VertexId a, VertexId b) { return tokens.at(a) < tokens.at(b); });
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (tokens.at(vs[i]) < static_cast<int>(i + 1))
      throw PreconditionError("sorted token counts fall below their positions");
  for (VertexId v : vs)
    if (targets.contains(v)) return {v};
  return {};
}

/// Path Ranker: low rounds keep the sigma-heavier of the odd and even
/// position classes; high rounds remove the first targeted vertex of the
/// visiting order. Requires sigma < 1 on the component.
inline VertexSet ranker_path(const Graph& comp, const TokenFunction& tokens, const VertexSet& targets,
                             RoundKind kind) {
  if (!(sigma(tokens, comp.vertex_set()) < Dyadic::integer(1)))
    throw PreconditionError("path Ranker needs sigma < 1");
  const auto order = path_order(comp);
  if (kind == RoundKind::low) {
    VertexSet odd, even;
    for (std::size_t i = 0; i < order.size(); ++i)
      if (targets.contains(order[i])) (i % 2 == 0 ? odd : even).insert(order[i]);
    return sigma(tokens, odd) >= sigma(tokens, even) ? odd : even;
  }
  std::vector<int> f;
  for (VertexId v : order) f.push_back(tokens.at(v));
  for (std::size_t i : path_high_ordering(f))
    if (targets.contains(order[i])) return {order[i]};
  return {};
}

inline bool odd(std::size_t n) { return n % 2 == 1; }

/// Cycle Ranker. High rounds need tau < 1 and remove the targeted vertex with
/// fewest tokens; low rounds need sigma < 1/2 + 2^-ceil(log2 n) and remove the
/// heavier alternating class. A triangle under 3/4 is played by the sorted
/// distinct-token rule.
inline VertexSet ranker_cycle(const Graph& comp, const TokenFunction& tokens, const VertexSet& targets,
                              RoundKind kind) {
  if (!is_cycle(comp)) throw PreconditionError("component is not a cycle");
  const std::size_t n = comp.order();
  const VertexSet all = comp.vertex_set();
  const Dyadic s = sigma(tokens, all);
  if (n == 3 && s < Dyadic::fraction(3, 2)) return sorted_distinct_rule(comp, tokens, targets);
  if (kind == RoundKind::high) {
    if (!(tau(tokens, all) < Dyadic::integer(1))) throw PreconditionError("cycle Ranker needs tau < 1 in high rounds");
    VertexId best = *targets.begin();
    for (VertexId v : targets)
      if (tokens.at(v) < tokens.at(best)) best = v;
    return {best};
  }
  if (!(s < cycle_sigma_bound(n)))
    throw PreconditionError("cycle Ranker needs sigma < 1/2 + 2^-ceil(log n) in low rounds");

  auto smaller_neighbour = [&](VertexId v) {
    const auto& nb = comp.neighbors(v);
    return std::min(nb[0], nb[1]);
  };
  // order[0] is v_1; classes are the odd positions (v_1, v_3, ...) and the even ones.
  std::vector<VertexId> order;
  const bool full = targets.size() == n;
  if (odd(n)) {
    VertexId anchor = 0;
    if (full) {
      anchor = *all.begin();
      for (VertexId v : all)
        if (tokens.at(v) > tokens.at(anchor)) anchor = v;
    } else {
      for (VertexId v : all)
        if (!targets.contains(v)) {
          anchor = v;
          break;
        }
    }
    order = cycle_walk(comp, anchor, smaller_neighbour(anchor));
    std::rotate(order.begin(), order.begin() + 1, order.end());
  } else {
    const VertexId first = *all.begin();
    order = cycle_walk(comp, first, smaller_neighbour(first));
  }
  VertexSet b, c;
  for (std::size_t i = 0; i < order.size(); ++i)
    if (targets.contains(order[i])) (i % 2 == 0 ? b : c).insert(order[i]);
  if (odd(n)) b.erase(order.back());  // v_n is either untargeted or excluded
  return sigma(tokens, b) >= sigma(tokens, c) ? b : c;
}

/// Path and cycle components, each by its own rule.
inline VertexSet ranker_path_or_cycle(const Graph& comp, const TokenFunction& tokens, const VertexSet& targets,
                                      RoundKind kind) {
  if (is_cycle(comp)) return ranker_cycle(comp, tokens, targets, kind);
  return ranker_path(comp, tokens, targets, kind);
}

/// Star and double-star Ranker for high rounds. Path components with
/// sigma < 1 (including single vertices) use the path rule.
inline VertexSet ranker_star(const Graph& comp, const TokenFunction& tokens, const VertexSet& targets,
                             RoundKind kind) {
  if (kind != RoundKind::high) throw PreconditionError("star Ranker plays high rounds only");
  if (is_path(comp) && sigma(tokens, comp.vertex_set()) < Dyadic::integer(1))
    return ranker_path(comp, tokens, targets, kind);
  if (!is_tree(comp)) throw PreconditionError("component is not a tree");
  std::vector<VertexId> internal;
  for (VertexId v : comp.vertices())
    if (comp.degree(v) >= 2) internal.push_back(v);
  auto first_targeted_leaf_of = [&](VertexId centre) -> std::optional<VertexId> {
    for (VertexId w : comp.neighbors(centre))
      if (comp.degree(w) == 1 && targets.contains(w)) return w;
    return std::nullopt;
  };
  if (internal.size() == 1) {
    const VertexId centre = internal.front();
    if (targets.contains(centre)) return {centre};
    return {*first_targeted_leaf_of(centre)};
  }
  if (internal.size() == 2 && comp.adjacent(internal[0], internal[1])) {
    auto leaves = [&](VertexId x) { return comp.degree(x) - 1; };
    VertexId big = internal[0], small = internal[1];
    if (leaves(small) > leaves(big)) std::swap(big, small);
    if (targets.contains(big)) return {big};
    if (targets.contains(small)) return {small};
    if (auto leaf = first_targeted_leaf_of(big)) return {*leaf};
    return {*first_targeted_leaf_of(small)};
  }
  throw PreconditionError("component is neither a star nor a double star");
}

// ---------------------------------------------------------------------------
// Whole-game Ranker strategies

/// Ranker that keeps a prefix v_1..v_k governed by `inner` and answers moves
/// missing the prefix by removing the least-indexed targeted vertex. Needs
/// f(v_i) >= i beyond the prefix and, for every component outside the
/// prefix, a clique of prefix neighbours.
inline RankerStrategy ranker_distinct_tail(const GameState& initial, RankerStrategy inner,
                                           std::vector<VertexId> ordering, std::size_t k) {
  const Graph& g = initial.graph;
  if (ordering.size() != g.order() || VertexSet(ordering.begin(), ordering.end()) != g.vertex_set())
    throw PreconditionError("ordering must list every vertex once");
  if (k > ordering.size()) throw PreconditionError("prefix longer than the ordering");
  for (std::size_t i = k; i < ordering.size(); ++i)
    if (initial.tokens.at(ordering[i]) < static_cast<int>(i + 1))
      throw PreconditionError("vertex " + std::to_string(ordering[i]) + " has fewer tokens than its position");
  const VertexSet prefix(ordering.begin(), ordering.begin() + static_cast<std::ptrdiff_t>(k));
  VertexSet rest;
  for (VertexId v : g.vertices())
    if (!prefix.contains(v)) rest.insert(v);
  for (const auto& c : components(g.induced(rest))) {
    VertexSet attach;
    for (VertexId v : c)
      for (VertexId w : g.neighbors(v))
        if (prefix.contains(w)) attach.insert(w);
    for (VertexId a : attach)
      for (VertexId b : attach)
        if (a < b && !g.adjacent(a, b)) throw PreconditionError("prefix neighbours of a tail component are not a clique");
  }
  return [inner = std::move(inner), ordering = std::move(ordering), prefix](const GameState& s, const TaxerMove& t) {
    VertexSet live_prefix, hit;
    for (VertexId v : prefix)
      if (s.graph.contains(v)) {
        live_prefix.insert(v);
        if (t.targets.contains(v)) hit.insert(v);
      }
    if (hit.empty()) {
      for (VertexId v : ordering)
        if (t.targets.contains(v)) return RankerMove{{v}};
      return RankerMove{};
    }
    GameState sub = s;
    sub.graph = s.graph.induced(live_prefix);
    sub.tokens.clear();
    for (VertexId v : live_prefix) sub.tokens[v] = s.tokens.at(v);
    sub.outcome = judge(sub.graph, sub.tokens);
    return inner(sub, TaxerMove{t.kind, hit, t.label});
  };
}

/// Ranker on a whole graph by the sorted distinct-token rule.
inline RankerStrategy ranker_sorted_distinct() {
  return [](const GameState& s, const TaxerMove& t) {
    return RankerMove{sorted_distinct_rule(s.graph, s.tokens, t.targets)};
  };
}

/// Low-game Ranker for the path with tokens (3,1,2,3,5,...,n): an opening
/// rule on v_1..v_4, the sorted distinct-token rule afterwards, and the tail
/// handled by the distinct-tail combinator.
inline RankerStrategy ranker_p4_low(const GameState& initial) {
  const auto order = path_order(initial.graph);
  if (order.size() < 4) throw PreconditionError("needs a path on at least 4 vertices");
  std::vector<VertexId> v(order.begin(), order.begin() + 4);
  const std::vector<int> opening{3, 1, 2, 3};
  for (std::size_t i = 0; i < 4; ++i)
    if (initial.tokens.at(v[i]) != opening[i]) throw PreconditionError("prefix tokens must be (3,1,2,3)");
  auto inner = [v, opening](const GameState& s, const TaxerMove& t) {
    bool fresh = true;
    for (std::size_t i = 0; i < 4; ++i)
      fresh = fresh && s.graph.contains(v[i]) && s.tokens.at(v[i]) == opening[i];
    if (!fresh) return RankerMove{sorted_distinct_rule(s.graph, s.tokens, t.targets)};
    auto hit = [&](std::size_t i) { return t.targets.contains(v[i]); };
    RankerMove r;
    if (hit(1)) {
      r.removed.insert(v[1]);
      if (hit(3)) r.removed.insert(v[3]);
    } else {
      if (hit(0)) r.removed.insert(v[0]);
      if (hit(2)) r.removed.insert(v[2]);
      if (hit(3) && !hit(2)) r.removed.insert(v[3]);
    }
    return r;
  };
  return ranker_distinct_tail(initial, inner, order, 4);
}

// ---------------------------------------------------------------------------
// Taxer strategies

/// Scripted high-game Taxer for the path with tokens (3,1,2,3,5,...,n).
inline TaxerStrategy taxer_path_script(const GameState& initial) {
  auto order = path_order(initial.graph);
  const std::size_t n = order.size();
  if (n < 4) throw PreconditionError("the scripted Taxer needs n >= 4");
  auto matches = [&](const std::vector<VertexId>& o) {
    static const int head[] = {3, 1, 2, 3};
    for (std::size_t i = 0; i < n; ++i) {
      const int want = i < 4 ? head[i] : static_cast<int>(i + 1);
      if (initial.tokens.at(o[i]) != want) return false;
    }
    return true;
  };
  if (!matches(order)) {
    std::reverse(order.begin(), order.end());
    if (!matches(order)) throw PreconditionError("tokens must be (3,1,2,3,5,...,n) along the path");
  }
  const std::vector<VertexId> v(order.begin(), order.begin() + 4);
  return [v](const GameState& s) {
    auto alive = [&](std::size_t i) { return s.graph.contains(v[i]); };
    auto tok = [&](std::size_t i) { return s.tokens.at(v[i]); };
    TaxerMove t{RoundKind::high, {}, std::nullopt};
    for (std::size_t i = 0; i + 1 < 4; ++i)
      if (alive(i) && alive(i + 1) && tok(i) == 1 && tok(i + 1) == 1) {
        t.targets = {v[i], v[i + 1]};
        return t;
      }
    const bool opening = alive(0) && alive(1) && alive(2) && alive(3) && tok(0) == 3 && tok(1) == 1 &&
                         tok(2) == 2 && tok(3) == 3;
    if (opening) {
      t.targets = {v[0], v[3]};
    } else if (!alive(0)) {
      for (std::size_t i : {1, 2, 3})
        if (alive(i)) t.targets.insert(v[i]);
    } else if (!alive(3)) {
      t.targets = {v[0]};
      if (alive(2)) t.targets.insert(v[2]);
    } else {
      for (std::size_t i : {1, 2, 3})
        if (alive(i)) t.targets.insert(v[i]);
    }
    if (t.targets.empty()) t.targets = s.graph.vertex_set();
    return t;
  };
}

/// Uniformly random round kind and nonempty target set.
inline TaxerStrategy random_taxer(std::uint64_t seed) {
  return [rng = std::mt19937_64(seed)](const GameState& s) mutable {
    const auto kinds = allowed_kinds(s.variant);
    TaxerMove t{kinds[std::uniform_int_distribution<std::size_t>(0, kinds.size() - 1)(rng)], {}, std::nullopt};
    const auto vs = s.graph.vertices();
    while (t.targets.empty())
      for (VertexId v : vs)
        if (rng() & 1u) t.targets.insert(v);
    return t;
  };
}

/// Random Ranker. When `legal_only`, replies are legal and remove every
/// targeted vertex about to run out of tokens whenever legality allows;
/// otherwise replies are arbitrary subsets of T.
inline RankerStrategy random_ranker(std::uint64_t seed, bool legal_only = true) {
  return [rng = std::mt19937_64(seed), legal_only](const GameState& s, const TaxerMove& t) mutable {
    std::vector<VertexId> cand(t.targets.begin(), t.targets.end());
    std::shuffle(cand.begin(), cand.end(), rng);
    std::stable_partition(cand.begin(), cand.end(), [&](VertexId v) { return s.tokens.at(v) <= 1; });
    RankerMove r;
    if (!legal_only) {
      for (VertexId v : cand)
        if (rng() & 1u) r.removed.insert(v);
      return r;
    }
    std::vector<VertexSet> comps;
    if (t.kind == RoundKind::high) comps = components(s.graph);
    for (VertexId v : cand) {
      if (s.tokens.at(v) > 1 && (rng() & 3u) == 0) continue;
      bool ok = true;
      for (VertexId w : r.removed) {
        if (t.kind == RoundKind::low && s.graph.adjacent(v, w)) ok = false;
        if (t.kind == RoundKind::high)
          for (const auto& c : comps)
            if (c.contains(v) && c.contains(w)) ok = false;
      }
      if (ok) r.removed.insert(v);
    }
    return r;
  };
}

inline std::string describe_state(const GameState& s) {
  std::ostringstream os;
  os << "round " << s.round << " tokens:";
  for (auto [v, k] : s.tokens) os << ' ' << v << '=' << k;
  os << " edges:";
  for (auto [u, v] : s.graph.edges()) os << ' ' << u << '-' << v;
  return os.str();
}

/// Reads Taxer moves such as "low 0 1 2" or "high 3", one per line.
inline TaxerStrategy stdin_taxer(std::istream& in, std::ostream& prompt) {
  return [&in, &prompt](const GameState& s) {
    prompt << describe_state(s) << "\ntaxer> " << std::flush;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("input closed");
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    TaxerMove t{kind == "high" ? RoundKind::high : RoundKind::low, {}, std::nullopt};
    if (kind != "low" && kind != "high") throw IllegalMove("expected 'low' or 'high'");
    for (VertexId v; ls >> v;) t.targets.insert(v);
    return t;
  };
}

/// Reads Ranker replies as whitespace-separated ids, one line per round.
inline RankerStrategy stdin_ranker(std::istream& in, std::ostream& prompt) {
  return [&in, &prompt](const GameState& s, const TaxerMove& t) {
    prompt << describe_state(s) << "\n" << to_string(t.kind) << " targets:";
    for (VertexId v : t.targets) prompt << ' ' << v;
    prompt << "\nranker> " << std::flush;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("input closed");
    std::istringstream ls(line);
    RankerMove r;
    for (VertexId v; ls >> v;) r.removed.insert(v);
    return r;
  };
}

inline TaxerStrategy solver_taxer(std::shared_ptr<Solver> solver) {
  return [solver = std::move(solver)](const GameState& s) { return solver->best_taxer_move(s); };
}

inline RankerStrategy solver_ranker(std::shared_ptr<Solver> solver) {
  return [solver = std::move(solver)](const GameState& s, const TaxerMove& t) {
    return solver->best_ranker_move(s, t);
  };
}

// ---------------------------------------------------------------------------
// Registry

/// Ranker by name: sigma-path, tau-cycle, distinct-tail, star, double-star,
/// p4-low, solver, random:SEED.
inline RankerStrategy make_ranker(const std::string& name, const GameState& initial,
                                  const std::shared_ptr<Solver>& solver) {
  if (name == "sigma-path") return compose_components(ranker_path);
  if (name == "tau-cycle") return compose_components(ranker_path_or_cycle);
  if (name == "distinct-tail") return ranker_sorted_distinct();
  if (name == "star" || name == "double-star") return compose_components(ranker_star);
  if (name == "p4-low") return ranker_p4_low(initial);
  if (name == "solver") return solver_ranker(solver);
  if (name.starts_with("random:")) return random_ranker(std::stoull(name.substr(7)));
  throw std::invalid_argument("unknown Ranker strategy '" + name + "'");
}

/// Taxer by name: script-p4, solver, random:SEED.
inline TaxerStrategy make_taxer(const std::string& name, const GameState& initial,
                                const std::shared_ptr<Solver>& solver) {
  if (name == "script-p4") return taxer_path_script(initial);
  if (name == "solver") return solver_taxer(solver);
  if (name.starts_with("random:")) return random_taxer(std::stoull(name.substr(7)));
  throw std::invalid_argument("unknown Taxer strategy '" + name + "'");
}

/// Every component is a path with sigma < 1.
inline std::optional<std::string> paths_below_one(const GameState& s) {
  for (const auto& comp : components(s.graph)) {
    if (!is_path(s.graph.induced(comp))) return "a component is not a path";
    if (!(sigma(s.tokens, comp) < Dyadic::integer(1))) return "a path component has sigma >= 1";
  }
  return std::nullopt;
}

}  // namespace rankduel
