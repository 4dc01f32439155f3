#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rankduel/errors.hpp"
#include "rankduel/game.hpp"
#include "rankduel/graph.hpp"
#include "rankduel/ranking.hpp"

namespace rankduel {

struct SolverCaps {
  std::size_t max_vertices = 6;
  int max_tokens = 4;
};

/// Hard limits of the packed position encoding.
inline constexpr std::size_t kSolverVertexLimit = 8;
inline constexpr int kSolverTokenLimit = 7;

/// Reads "V,K" (max vertices, max tokens) from RANKDUEL_CAPS when set.
inline SolverCaps caps_from_env(SolverCaps fallback = {}) {
  const char* env = std::getenv("RANKDUEL_CAPS");
  if (!env || !*env) return fallback;
  const std::string s(env);
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("RANKDUEL_CAPS must look like V,K");
  SolverCaps c;
  c.max_vertices = static_cast<std::size_t>(std::stoul(s.substr(0, comma)));
  c.max_tokens = std::stoi(s.substr(comma + 1));
  return c;
}

namespace detail {

/// Packed position: vertices 0..n-1, adjacency and token arrays.
struct Pos {
  int n = 0;
  std::array<std::uint8_t, kSolverVertexLimit> adj{};
  std::array<std::uint8_t, kSolverVertexLimit> tok{};
};

inline std::array<std::uint8_t, kSolverVertexLimit> component_masks(const Pos& p) {
  std::array<std::uint8_t, kSolverVertexLimit> comp{};
  for (int v = 0; v < p.n; ++v) {
    if (comp[v]) continue;
    std::uint8_t reach = static_cast<std::uint8_t>(1u << v);
    for (;;) {
      std::uint8_t next = reach;
      for (unsigned r = reach; r; r &= r - 1) next |= p.adj[std::countr_zero(r)];
      if (next == reach) break;
      reach = next;
    }
    for (unsigned r = reach; r; r &= r - 1) comp[std::countr_zero(r)] = reach;
  }
  return comp;
}

inline bool legal_removal(const Pos& p, const std::array<std::uint8_t, kSolverVertexLimit>& comp, RoundKind kind,
                          unsigned r) {
  for (unsigned x = r; x; x &= x - 1) {
    const int v = std::countr_zero(x);
    const unsigned clash = kind == RoundKind::low ? p.adj[v] : (comp[v] & ~(1u << v));
    if (clash & r) return false;
  }
  return true;
}

/// Takes a token from each vertex of t, removes r, and compacts the survivors.
inline Pos play(const Pos& p, RoundKind kind, unsigned t, unsigned r) {
  std::array<std::uint8_t, kSolverVertexLimit> adj = p.adj;
  if (kind == RoundKind::low) {
    for (unsigned x = r; x; x &= x - 1) {
      const int v = std::countr_zero(x);
      for (unsigned a = p.adj[v]; a; a &= a - 1) {
        const int w = std::countr_zero(a);
        adj[w] |= static_cast<std::uint8_t>(p.adj[v] & ~(1u << w));
      }
    }
  }
  Pos out;
  std::array<int, kSolverVertexLimit> index{};
  for (int v = 0; v < p.n; ++v) {
    if (r >> v & 1u) {
      index[v] = -1;
      continue;
    }
    index[v] = out.n;
    out.tok[out.n] = static_cast<std::uint8_t>(p.tok[v] - ((t >> v) & 1u));
    ++out.n;
  }
  for (int v = 0; v < p.n; ++v) {
    if (index[v] < 0) continue;
    std::uint8_t row = 0;
    for (unsigned a = adj[v] & ~r; a; a &= a - 1) row |= static_cast<std::uint8_t>(1u << index[std::countr_zero(a)]);
    out.adj[index[v]] = row;
  }
  return out;
}

/// Dense colour refinement: a vertex's new colour is the rank of
/// (old colour, sorted neighbour colours) among all vertices.
inline void refine(const Pos& p, std::array<int, kSolverVertexLimit>& color) {
  int classes = -1;
  for (;;) {
    std::array<std::vector<int>, kSolverVertexLimit> sig;
    for (int v = 0; v < p.n; ++v) {
      sig[v].push_back(color[v]);
      std::vector<int> nb;
      for (unsigned a = p.adj[v]; a; a &= a - 1) nb.push_back(color[std::countr_zero(a)]);
      std::sort(nb.begin(), nb.end());
      sig[v].insert(sig[v].end(), nb.begin(), nb.end());
    }
    std::vector<std::vector<int>> distinct(sig.begin(), sig.begin() + p.n);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int v = 0; v < p.n; ++v)
      color[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    const int now = static_cast<int>(distinct.size());
    if (now == classes) return;
    classes = now;
  }
}

inline std::uint64_t encode(const Pos& p, const std::array<int, kSolverVertexLimit>& place, int variant) {
  std::array<int, kSolverVertexLimit> at{};
  for (int v = 0; v < p.n; ++v) at[place[v]] = v;
  std::uint64_t key = static_cast<std::uint64_t>(variant);
  key = key << 4 | static_cast<std::uint64_t>(p.n);
  for (int i = 0; i < p.n; ++i) key = key << 3 | p.tok[at[i]];
  for (int i = 0; i < p.n; ++i)
    for (int j = i + 1; j < p.n; ++j) key = key << 1 | ((p.adj[at[i]] >> at[j]) & 1u);
  return key;
}

/// Canonical key by individualisation-refinement over token-coloured vertices.
inline std::uint64_t canonical_key(const Pos& p, int variant) {
  std::array<int, kSolverVertexLimit> color{};
  for (int v = 0; v < p.n; ++v) color[v] = p.tok[v];
  refine(p, color);
  std::uint64_t best = ~std::uint64_t{0};
  auto search = [&](auto& self, std::array<int, kSolverVertexLimit> c) -> void {
    std::array<int, kSolverVertexLimit> count{};
    for (int v = 0; v < p.n; ++v) ++count[c[v]];
    int cell = -1;
    for (int k = 0; k < p.n; ++k)
      if (count[k] > 1) {
        cell = k;
        break;
      }
    if (cell < 0) {
      best = std::min(best, encode(p, c, variant));
      return;
    }
    for (int v = 0; v < p.n; ++v) {
      if (c[v] != cell) continue;
      std::array<int, kSolverVertexLimit> next{};
      for (int u = 0; u < p.n; ++u) next[u] = 2 * c[u] + (u == v ? 0 : 1);
      refine(p, next);
      self(self, next);
    }
  };
  search(search, color);
  return best;
}

/// Nonempty subsets of an n-set: by size, then lexicographically by elements.
inline const std::vector<unsigned>& subsets_by_size(int n) {
  static const auto table = [] {
    std::array<std::vector<unsigned>, kSolverVertexLimit + 1> t;
    for (int m = 0; m <= static_cast<int>(kSolverVertexLimit); ++m) {
      for (unsigned s = 1; s < (1u << m); ++s) t[m].push_back(s);
      std::sort(t[m].begin(), t[m].end(), [](unsigned a, unsigned b) {
        if (std::popcount(a) != std::popcount(b)) return std::popcount(a) < std::popcount(b);
        // Lexicographic on sorted element lists: the lowest differing bit decides.
        const unsigned diff = a ^ b;
        return (a & diff & (~diff + 1)) != 0;
      });
    }
    return t;
  }();
  return table[n];
}

}  // namespace detail

/// Exact solver for the three games on small positions, memoised on a
/// canonical form of (graph, tokens, variant). Not thread-safe; use one
/// instance per thread.
class Solver {
 public:
  explicit Solver(SolverCaps caps = {}) : caps_(caps) {
    if (caps_.max_vertices > kSolverVertexLimit || caps_.max_tokens > kSolverTokenLimit)
      throw CapExceeded("solver caps exceed the packed encoding limits (8 vertices, 7 tokens)");
  }

  const SolverCaps& caps() const { return caps_; }
  std::size_t nodes() const { return nodes_; }
  std::size_t memo_size() const { return memo_.size(); }

  /// Winner under optimal play.
  Side winner(const GameState& s) { return ranker_wins(s) ? Side::ranker : Side::taxer; }

  bool ranker_wins(const GameState& s) {
    if (s.outcome != Outcome::ongoing) return s.outcome == Outcome::ranker_win;
    const auto p = pack(s);
    return wins(p, static_cast<int>(s.variant), allowed_kinds(s.variant));
  }

  /// Every (kind, T) after which Taxer wins, in enumeration order.
  std::vector<TaxerMove> winning_taxer_moves(const GameState& s) {
    std::vector<TaxerMove> out;
    if (s.outcome != Outcome::ongoing) return out;
    const auto p = pack(s);
    const auto kinds = allowed_kinds(s.variant);
    for (RoundKind kind : kinds)
      for (unsigned t : detail::subsets_by_size(p.n))
        if (!answerable(p, static_cast<int>(s.variant), kinds, kind, t)) out.push_back(unpack_taxer(s, kind, t));
    return out;
  }

  /// A value-achieving Taxer move; when Taxer is lost, the first legal move.
  TaxerMove best_taxer_move(const GameState& s) {
    if (s.outcome != Outcome::ongoing) throw IllegalMove("the game is already decided");
    const auto p = pack(s);
    const auto kinds = allowed_kinds(s.variant);
    for (RoundKind kind : kinds)
      for (unsigned t : detail::subsets_by_size(p.n))
        if (!answerable(p, static_cast<int>(s.variant), kinds, kind, t)) return unpack_taxer(s, kind, t);
    return unpack_taxer(s, kinds.front(), detail::subsets_by_size(p.n).front());
  }

  /// A winning Ranker reply if one exists, else the first legal reply in
  /// enumeration order (largest sets first).
  RankerMove best_ranker_move(const GameState& s, const TaxerMove& t) {
    validate_taxer(s, t);
    const auto p = pack(s);
    const auto ids = s.graph.vertices();
    unsigned tm = 0;
    for (VertexId v : t.targets) tm |= 1u << index_of(ids, v);
    const auto kinds = allowed_kinds(s.variant);
    const auto comp = detail::component_masks(p);
    std::optional<unsigned> first_legal;
    for (unsigned r : replies(tm)) {
      if (!detail::legal_removal(p, comp, t.kind, r)) continue;
      if (!first_legal) first_legal = r;
      if (!survives(p, tm, r)) continue;
      if (wins(detail::play(p, t.kind, tm, r), static_cast<int>(s.variant), kinds)) return unpack_ranker(ids, r);
    }
    return unpack_ranker(ids, first_legal.value_or(0));
  }

 private:
  static std::size_t index_of(const std::vector<VertexId>& ids, VertexId v) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  }

  detail::Pos pack(const GameState& s) const {
    const auto ids = s.graph.vertices();
    if (ids.size() > caps_.max_vertices)
      throw CapExceeded("solver: " + std::to_string(ids.size()) + " vertices exceeds cap " +
                        std::to_string(caps_.max_vertices));
    detail::Pos p;
    p.n = static_cast<int>(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const int k = s.tokens.at(ids[i]);
      if (k > caps_.max_tokens)
        throw CapExceeded("solver: token count " + std::to_string(k) + " exceeds cap " +
                          std::to_string(caps_.max_tokens));
      p.tok[i] = static_cast<std::uint8_t>(k);
      for (VertexId w : s.graph.neighbors(ids[i])) p.adj[i] |= static_cast<std::uint8_t>(1u << index_of(ids, w));
    }
    return p;
  }

  static TaxerMove unpack_taxer(const GameState& s, RoundKind kind, unsigned t) {
    const auto ids = s.graph.vertices();
    TaxerMove m{kind, {}, std::nullopt};
    for (unsigned x = t; x; x &= x - 1) m.targets.insert(ids[std::countr_zero(x)]);
    return m;
  }

  static RankerMove unpack_ranker(const std::vector<VertexId>& ids, unsigned r) {
    RankerMove m;
    for (unsigned x = r; x; x &= x - 1) m.removed.insert(ids[std::countr_zero(x)]);
    return m;
  }

  /// Subsets of t (including the empty set): largest first, then lexicographic.
  static std::vector<unsigned> replies(unsigned t) {
    std::vector<unsigned> out;
    for (unsigned s = t;; s = (s - 1) & t) {
      out.push_back(s);
      if (s == 0) break;
    }
    std::sort(out.begin(), out.end(), [](unsigned a, unsigned b) {
      if (std::popcount(a) != std::popcount(b)) return std::popcount(a) > std::popcount(b);
      const unsigned diff = a ^ b;
      return (a & diff & (~diff + 1)) != 0;
    });
    return out;
  }

  /// A targeted vertex holding its last token must be removed.
  static bool survives(const detail::Pos& p, unsigned t, unsigned r) {
    for (unsigned x = t & ~r; x; x &= x - 1)
      if (p.tok[std::countr_zero(x)] <= 1) return false;
    return true;
  }

  bool answerable(const detail::Pos& p, int variant, const std::vector<RoundKind>& kinds, RoundKind kind, unsigned t) {
    const auto comp = detail::component_masks(p);
    unsigned forced = 0;
    for (unsigned x = t; x; x &= x - 1)
      if (p.tok[std::countr_zero(x)] <= 1) forced |= x & (~x + 1);
    if (!detail::legal_removal(p, comp, kind, forced)) return false;
    const unsigned optional_part = t & ~forced;
    // Larger replies first: enumerate the optional part from full downwards by size.
    for (unsigned extra : replies(optional_part)) {
      const unsigned r = forced | extra;
      if (!detail::legal_removal(p, comp, kind, r)) continue;
      if (wins(detail::play(p, kind, t, r), variant, kinds)) return true;
    }
    return false;
  }

  bool wins(const detail::Pos& p, int variant, const std::vector<RoundKind>& kinds) {
    if (p.n == 0) return true;
    for (int v = 0; v < p.n; ++v)
      if (p.tok[v] == 0) return false;
    const std::uint64_t key = detail::canonical_key(p, variant);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    ++nodes_;
    bool result = true;
    for (RoundKind kind : kinds) {
      for (unsigned t : detail::subsets_by_size(p.n))
        if (!answerable(p, variant, kinds, kind, t)) {
          result = false;
          break;
        }
      if (!result) break;
    }
    memo_.emplace(key, result);
    return result;
  }

  SolverCaps caps_;
  std::unordered_map<std::uint64_t, bool> memo_;
  std::size_t nodes_ = 0;
};

/// Least k <= k_max with Ranker winning at f = k everywhere; nullopt past k_max.
inline std::optional<int> online_number(const Graph& g, GameVariant variant, int k_max, Solver& solver) {
  if (g.empty()) return 0;
  for (int k = 1; k <= k_max; ++k)
    if (solver.ranker_wins(initial_state(g, constant_tokens(g, k), variant))) return k;
  return std::nullopt;
}

/// All Ranker replies to t: subsets of T that remove every targeted vertex
/// holding its last token and are legal for the round, largest first.
inline std::vector<RankerMove> surviving_replies(const GameState& s, const TaxerMove& t) {
  std::vector<VertexId> forced, optional;
  for (VertexId v : t.targets) (s.tokens.at(v) <= 1 ? forced : optional).push_back(v);
  if (optional.size() > 20) throw CapExceeded("too many optional targets to enumerate replies");
  std::vector<RankerMove> out;
  const std::size_t m = optional.size();
  std::vector<unsigned> masks;
  for (unsigned s2 = 0; s2 < (1u << m); ++s2) masks.push_back(s2);
  std::stable_sort(masks.begin(), masks.end(),
                   [](unsigned a, unsigned b) { return std::popcount(a) > std::popcount(b); });
  for (unsigned mask : masks) {
    RankerMove r;
    r.removed.insert(forced.begin(), forced.end());
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1u) r.removed.insert(optional[i]);
    try {
      validate_ranker(s, t, r);
    } catch (const IllegalMove&) {
      continue;
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace detail {
inline Transcript transcript_from(const GameState& initial, const std::vector<RoundRecord>& line, Outcome outcome) {
  Transcript tr;
  tr.variant = initial.variant;
  tr.initial_graph = initial.graph;
  tr.initial_tokens = initial.tokens;
  tr.rounds = line;
  tr.outcome = outcome;
  return tr;
}
}  // namespace detail

/// Searches for a Ranker line that beats a fixed (stateless) Taxer strategy.
/// Returns the winning transcript, or nullopt when every line loses.
inline std::optional<Transcript> solve_against(const GameState& initial, const TaxerStrategy& taxer) {
  std::unordered_set<std::string> lost;
  std::vector<RoundRecord> line;
  auto dfs = [&](auto& self, const GameState& s) -> bool {
    if (s.outcome != Outcome::ongoing) return s.outcome == Outcome::ranker_win;
    const std::string key = state_key(s);
    if (lost.contains(key)) return false;
    const TaxerMove t = taxer(s);
    validate_taxer(s, t);
    for (const auto& r : surviving_replies(s, t)) {
      GameState next = apply_round(s, t, r);
      line.push_back({t.kind, t.targets, r.removed, t.label, next.graph, next.tokens});
      if (self(self, next)) return true;
      line.pop_back();
    }
    lost.insert(key);
    return false;
  };
  if (!dfs(dfs, initial)) return std::nullopt;
  return detail::transcript_from(initial, line, Outcome::ranker_win);
}

struct CheckResult {
  bool ok = true;
  std::size_t positions = 0;
  std::string reason;
  /// The offending line of play when ok is false.
  std::optional<Transcript> counterexample;
};

/// Invariant hook: returns a message when the state violates it.
using StateInvariant = std::function<std::optional<std::string>(const GameState&)>;

/// Plays a Ranker strategy against every possible Taxer move sequence.
/// Fails on any loss, illegal or thrown reply, or invariant violation.
inline CheckResult ranker_never_loses(const GameState& initial, const RankerStrategy& ranker,
                                      const StateInvariant& invariant = {}) {
  CheckResult res;
  std::unordered_set<std::string> safe;
  std::vector<RoundRecord> line;
  auto fail = [&](std::string why, Outcome o) {
    res.ok = false;
    res.reason = std::move(why);
    res.counterexample = detail::transcript_from(initial, line, o);
    return false;
  };
  auto dfs = [&](auto& self, const GameState& s) -> bool {
    if (s.outcome == Outcome::ranker_win) return true;
    if (s.outcome == Outcome::taxer_win) return fail("Taxer won", Outcome::taxer_win);
    const std::string key = state_key(s);
    if (safe.contains(key)) return true;
    ++res.positions;
    const auto ids = s.graph.vertices();
    if (ids.size() > 16) throw CapExceeded("ranker_never_loses: too many vertices to enumerate Taxer moves");
    for (RoundKind kind : allowed_kinds(s.variant)) {
      for (unsigned mask = 1; mask < (1u << ids.size()); ++mask) {
        TaxerMove t{kind, {}, std::nullopt};
        for (std::size_t i = 0; i < ids.size(); ++i)
          if (mask >> i & 1u) t.targets.insert(ids[i]);
        GameState next;
        RankerMove r;
        try {
          r = ranker(s, t);
          next = apply_round(s, t, r);
        } catch (const std::exception& e) {
          return fail(std::string("Ranker forfeited: ") + e.what(), Outcome::taxer_win);
        }
        line.push_back({t.kind, t.targets, r.removed, t.label, next.graph, next.tokens});
        if (invariant && next.outcome == Outcome::ongoing)
          if (auto msg = invariant(next)) return fail("invariant violated: " + *msg, next.outcome);
        if (!self(self, next)) return false;
        line.pop_back();
      }
    }
    safe.insert(key);
    return true;
  };
  dfs(dfs, initial);
  return res;
}

/// Plays a Taxer strategy against every legal Ranker reply sequence.
inline CheckResult taxer_always_wins(const GameState& initial, const TaxerStrategy& taxer) {
  CheckResult res;
  std::unordered_set<std::string> safe;
  std::vector<RoundRecord> line;
  auto dfs = [&](auto& self, const GameState& s) -> bool {
    if (s.outcome == Outcome::taxer_win) return true;
    if (s.outcome == Outcome::ranker_win) {
      res.ok = false;
      res.reason = "Ranker won";
      res.counterexample = detail::transcript_from(initial, line, Outcome::ranker_win);
      return false;
    }
    const std::string key = state_key(s);
    if (safe.contains(key)) return true;
    ++res.positions;
    TaxerMove t;
    try {
      t = taxer(s);
      validate_taxer(s, t);
    } catch (const std::exception& e) {
      res.ok = false;
      res.reason = std::string("Taxer forfeited: ") + e.what();
      res.counterexample = detail::transcript_from(initial, line, Outcome::ranker_win);
      return false;
    }
    for (const auto& r : surviving_replies(s, t)) {
      GameState next = apply_round(s, t, r);
      line.push_back({t.kind, t.targets, r.removed, t.label, next.graph, next.tokens});
      if (!self(self, next)) return false;
      line.pop_back();
    }
    safe.insert(key);
    return true;
  };
  dfs(dfs, initial);
  return res;
}

}  // namespace rankduel
