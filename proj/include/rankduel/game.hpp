#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankduel/errors.hpp"
#include "rankduel/graph.hpp"
#include "rankduel/ranking.hpp"

namespace rankduel {

enum class GameVariant { low_only, high_only, mixed };
enum class RoundKind { low, high };
enum class Outcome { ongoing, taxer_win, ranker_win };
enum class Side { taxer, ranker };

inline const char* to_string(GameVariant v) {
  switch (v) {
    case GameVariant::low_only: return "low";
    case GameVariant::high_only: return "high";
    case GameVariant::mixed: return "mixed";
  }
  return "?";
}
inline const char* to_string(RoundKind k) { return k == RoundKind::low ? "low" : "high"; }
inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::ongoing: return "ongoing";
    case Outcome::taxer_win: return "taxer";
    case Outcome::ranker_win: return "ranker";
  }
  return "?";
}
inline const char* to_string(Side s) { return s == Side::taxer ? "taxer" : "ranker"; }

inline GameVariant parse_variant(const std::string& s) {
  if (s == "low" || s == "low_only") return GameVariant::low_only;
  if (s == "high" || s == "high_only") return GameVariant::high_only;
  if (s == "mixed") return GameVariant::mixed;
  throw std::invalid_argument("unknown game variant '" + s + "'");
}

inline bool kind_allowed(GameVariant v, RoundKind k) {
  return v == GameVariant::mixed || (v == GameVariant::low_only) == (k == RoundKind::low);
}

inline std::vector<RoundKind> allowed_kinds(GameVariant v) {
  std::vector<RoundKind> out;
  for (RoundKind k : {RoundKind::low, RoundKind::high})
    if (kind_allowed(v, k)) out.push_back(k);
  return out;
}

struct GameState {
  Graph graph;
  TokenFunction tokens;
  GameVariant variant = GameVariant::mixed;
  int round = 1;
  int low_count = 0;
  int high_count = 0;
  Outcome outcome = Outcome::ongoing;
  /// Label announced in the previous round, when the Taxer announces labels.
  std::optional<int> last_label;
};

struct TaxerMove {
  RoundKind kind = RoundKind::low;
  VertexSet targets;
  std::optional<int> label;
};

struct RankerMove {
  VertexSet removed;
};

inline Outcome judge(const Graph& g, const TokenFunction& tokens) {
  if (g.empty()) return Outcome::ranker_win;
  for (VertexId v : g.vertices())
    if (tokens.at(v) <= 0) return Outcome::taxer_win;
  return Outcome::ongoing;
}

inline GameState initial_state(const Graph& g, const TokenFunction& f, GameVariant variant) {
  GameState s;
  s.graph = g;
  s.variant = variant;
  for (VertexId v : g.vertices()) {
    auto it = f.find(v);
    if (it == f.end()) throw std::invalid_argument("token function misses vertex " + std::to_string(v));
    if (it->second < 0) throw std::invalid_argument("token counts must be nonnegative");
    s.tokens[v] = it->second;
  }
  s.outcome = judge(s.graph, s.tokens);
  return s;
}

inline void validate_taxer(const GameState& s, const TaxerMove& t) {
  if (s.outcome != Outcome::ongoing) throw IllegalMove("the game is already decided");
  if (!kind_allowed(s.variant, t.kind))
    throw IllegalMove(std::string(to_string(t.kind)) + " round not allowed in the " + to_string(s.variant) + " game");
  if (t.targets.empty()) throw IllegalMove("Taxer must target a nonempty set");
  for (VertexId v : t.targets)
    if (!s.graph.contains(v)) throw IllegalMove("target " + std::to_string(v) + " is not in the current graph");
}

inline void validate_ranker(const GameState& s, const TaxerMove& t, const RankerMove& r) {
  for (VertexId v : r.removed)
    if (!t.targets.contains(v)) throw IllegalMove("Ranker removed untargeted vertex " + std::to_string(v));
  if (t.kind == RoundKind::low) {
    if (!is_independent(s.graph, r.removed)) throw IllegalMove("low-round removal set is not independent");
  } else {
    for (const auto& comp : components(s.graph)) {
      int hits = 0;
      for (VertexId v : r.removed) hits += comp.contains(v) ? 1 : 0;
      if (hits > 1) throw IllegalMove("high-round removal set meets a component twice");
    }
  }
}

/// Plays one round: tokens are taken from T, then R is removed with the
/// mechanics of the round kind. Throws IllegalMove on any illegal move.
inline GameState apply_round(const GameState& s, const TaxerMove& t, const RankerMove& r) {
  validate_taxer(s, t);
  validate_ranker(s, t, r);
  GameState next;
  next.variant = s.variant;
  next.round = s.round + 1;
  next.low_count = s.low_count + (t.kind == RoundKind::low ? 1 : 0);
  next.high_count = s.high_count + (t.kind == RoundKind::high ? 1 : 0);
  next.last_label = t.label ? t.label : s.last_label;
  next.graph = t.kind == RoundKind::low ? eliminate_low(s.graph, r.removed) : delete_high(s.graph, r.removed);
  for (VertexId v : next.graph.vertices()) next.tokens[v] = s.tokens.at(v) - (t.targets.contains(v) ? 1 : 0);
  next.outcome = judge(next.graph, next.tokens);
  return next;
}

struct RoundRecord {
  RoundKind kind = RoundKind::low;
  VertexSet targets;
  VertexSet removed;
  std::optional<int> label;
  Graph graph_after;
  TokenFunction tokens_after;
};

struct Transcript {
  GameVariant variant = GameVariant::mixed;
  Graph initial_graph;
  TokenFunction initial_tokens;
  std::vector<RoundRecord> rounds;
  Outcome outcome = Outcome::ongoing;
  std::optional<Side> forfeit;
  std::string reason;
};

/// Strategies see the full state by value. Copying a std::function copies any
/// captured state, so a copied strategy is an independent clone.
using TaxerStrategy = std::function<TaxerMove(const GameState&)>;
using RankerStrategy = std::function<RankerMove(const GameState&, const TaxerMove&)>;

/// Runs the game to completion. A strategy that throws or produces an illegal
/// move forfeits; the transcript records who and why.
inline Transcript play_game(const GameState& initial, TaxerStrategy taxer, RankerStrategy ranker) {
  Transcript tr;
  tr.variant = initial.variant;
  tr.initial_graph = initial.graph;
  tr.initial_tokens = initial.tokens;
  GameState s = initial;
  tr.outcome = s.outcome;
  while (s.outcome == Outcome::ongoing) {
    TaxerMove t;
    try {
      t = taxer(s);
      validate_taxer(s, t);
    } catch (const std::exception& e) {
      tr.forfeit = Side::taxer;
      tr.reason = e.what();
      tr.outcome = Outcome::ranker_win;
      return tr;
    }
    RankerMove r;
    GameState next;
    try {
      r = ranker(s, t);
      next = apply_round(s, t, r);
    } catch (const std::exception& e) {
      tr.forfeit = Side::ranker;
      tr.reason = e.what();
      tr.outcome = Outcome::taxer_win;
      return tr;
    }
    tr.rounds.push_back({t.kind, t.targets, r.removed, t.label, next.graph, next.tokens});
    s = std::move(next);
    tr.outcome = s.outcome;
  }
  return tr;
}

inline void require_clean_win(const Transcript& tr) {
  if (tr.outcome != Outcome::ranker_win) throw std::invalid_argument("transcript is not a Ranker win");
  if (tr.forfeit) throw std::invalid_argument("transcript ended by forfeit");
  if (!tr.rounds.empty() && !tr.rounds.back().graph_after.empty())
    throw std::invalid_argument("transcript does not end with an empty graph");
}

/// Labels removals by round: the i'-th low round gets i', the i''-th high
/// round gets j+1-i'' where j is the number of rounds.
inline Ranking extract_ranking(const Transcript& tr) {
  require_clean_win(tr);
  const int j = static_cast<int>(tr.rounds.size());
  Ranking a;
  int lows = 0, highs = 0;
  for (const auto& rd : tr.rounds) {
    const int label = rd.kind == RoundKind::low ? ++lows : j + 1 - ++highs;
    for (VertexId v : rd.removed) a[v] = label;
  }
  return a;
}

/// Labels removals with the label each round announced.
inline Ranking extract_list_ranking(const Transcript& tr) {
  require_clean_win(tr);
  Ranking a;
  for (const auto& rd : tr.rounds) {
    if (!rd.label) throw std::invalid_argument("round without an announced label");
    for (VertexId v : rd.removed) a[v] = *rd.label;
  }
  return a;
}

/// Game whose tokens are the list sizes, to be played against list_as_taxer.
inline GameState list_game_state(const Graph& g, const ListAssignment& l, GameVariant variant) {
  TokenFunction f;
  for (VertexId v : g.vertices()) f[v] = static_cast<int>(l.at(v).size());
  return initial_state(g, f, variant);
}

/// Taxer that announces the labels of `l` in increasing order (low) or
/// decreasing order (high), targeting the surviving holders of each label.
/// Labels held by no survivor are skipped.
inline TaxerStrategy list_as_taxer(ListAssignment l, GameVariant variant) {
  if (variant == GameVariant::mixed) throw std::invalid_argument("list_as_taxer needs the low or the high game");
  const RoundKind kind = variant == GameVariant::low_only ? RoundKind::low : RoundKind::high;
  return [l = std::move(l), kind](const GameState& s) {
    std::optional<int> best;
    for (VertexId v : s.graph.vertices()) {
      const auto& list = l.at(v);
      if (kind == RoundKind::low) {
        auto it = s.last_label ? list.upper_bound(*s.last_label) : list.begin();
        if (it != list.end() && (!best || *it < *best)) best = *it;
      } else {
        auto it = s.last_label ? list.lower_bound(*s.last_label) : list.end();
        if (it != list.begin()) {
          const int c = *std::prev(it);
          if (!best || c > *best) best = c;
        }
      }
    }
    if (!best) throw std::logic_error("no label left for a surviving vertex");
    TaxerMove t{kind, {}, best};
    for (VertexId v : s.graph.vertices())
      if (l.at(v).contains(*best)) t.targets.insert(v);
    return t;
  };
}

/// Serialises a state exactly (ids, edges, tokens, counters) for memo tables.
inline std::string state_key(const GameState& s) {
  std::ostringstream os;
  os << static_cast<int>(s.variant) << '|' << s.low_count << ',' << s.high_count << '|'
     << (s.last_label ? *s.last_label : -1) << '|';
  for (auto [v, k] : s.tokens) os << v << ':' << k << ',';
  os << '|';
  for (auto [u, v] : s.graph.edges()) os << u << '-' << v << ',';
  return os.str();
}

}  // namespace rankduel
