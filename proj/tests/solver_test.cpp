#include <gtest/gtest.h>

#include <cstdlib>
#include <unordered_map>

#include "rankduel/enumerate.hpp"
#include "rankduel/solver.hpp"
#include "rankduel/strategies.hpp"

using namespace rankduel;

namespace {

// Oracle: plain minimax over every Taxer move and every legal Ranker reply,
// memoised on the exact state. No packing, symmetry or forced-move pruning.
class NaiveSolver {
 public:
  bool ranker_wins(const GameState& s) {
    if (s.outcome != Outcome::ongoing) return s.outcome == Outcome::ranker_win;
    const std::string key = state_key(s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const auto vs = s.graph.vertices();
    bool result = true;
    for (RoundKind kind : allowed_kinds(s.variant)) {
      for (unsigned t = 1; t < (1u << vs.size()) && result; ++t) {
        TaxerMove move{kind, {}, std::nullopt};
        for (std::size_t i = 0; i < vs.size(); ++i)
          if (t >> i & 1u) move.targets.insert(vs[i]);
        bool answered = false;
        for (unsigned r = t;; r = (r - 1) & t) {
          RankerMove reply;
          for (std::size_t i = 0; i < vs.size(); ++i)
            if (r >> i & 1u) reply.removed.insert(vs[i]);
          try {
            if (ranker_wins(apply_round(s, move, reply))) answered = true;
          } catch (const IllegalMove&) {
          }
          if (answered || r == 0) break;
        }
        result = answered;
      }
    }
    memo_[key] = result;
    return result;
  }

 private:
  std::unordered_map<std::string, bool> memo_;
};

std::vector<std::vector<int>> vectors(std::size_t n, int hi) {
  std::vector<std::vector<int>> out{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& v : out)
      for (int x = 1; x <= hi; ++x) {
        next.push_back(v);
        next.back().push_back(x);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST(Solver, AgreesWithNaiveMinimaxOnSmallGraphs) {
  Solver solver({6, 4});
  NaiveSolver naive;
  std::size_t ranker = 0, total = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& g : graph_classes(n, false))
      for (const auto& f : vectors(n, n <= 3 ? 3 : 2))
        for (GameVariant var : {GameVariant::low_only, GameVariant::high_only, GameVariant::mixed}) {
          const auto s = initial_state(g, tokens_in_order(g, f), var);
          const bool want = naive.ranker_wins(s);
          ASSERT_EQ(solver.ranker_wins(s), want) << canonical_form(g) << " " << to_string(var);
          ranker += want ? 1 : 0;
          ++total;
        }
  EXPECT_GT(ranker, 0u);
  EXPECT_LT(ranker, total);
}

TEST(Solver, RelabellingDoesNotChangeTheWinner) {
  Solver solver({6, 4});
  Graph a(4), b(4);
  a.add_edge(0, 1);
  a.add_edge(1, 2);
  a.add_edge(2, 3);
  b.add_edge(3, 1);
  b.add_edge(1, 0);
  b.add_edge(0, 2);
  for (const auto& f : vectors(4, 3)) {
    const TokenFunction fa{{0, f[0]}, {1, f[1]}, {2, f[2]}, {3, f[3]}};
    const TokenFunction fb{{3, f[0]}, {1, f[1]}, {0, f[2]}, {2, f[3]}};
    EXPECT_EQ(solver.winner(initial_state(a, fa, GameVariant::mixed)),
              solver.winner(initial_state(b, fb, GameVariant::mixed)));
  }
}

TEST(Solver, OnlineNumbersOfSmallFamilies) {
  Solver solver({8, 7});
  EXPECT_EQ(online_number(Graph(), GameVariant::mixed, 3, solver), 0);
  EXPECT_EQ(online_number(path_graph(3), GameVariant::mixed, 4, solver), 2);
  EXPECT_EQ(online_number(cycle_graph(4), GameVariant::mixed, 4, solver), 3);
  EXPECT_EQ(online_number(star_graph(3), GameVariant::high_only, 4, solver), 3);
  EXPECT_EQ(online_number(star_graph(3), GameVariant::mixed, 2, solver), std::nullopt);
}

TEST(Solver, CapsAreEnforced) {
  Solver solver({4, 3});
  const Graph p = path_graph(5);
  EXPECT_THROW(solver.winner(initial_state(p, constant_tokens(p, 2), GameVariant::mixed)), CapExceeded);
  const Graph q = path_graph(3);
  EXPECT_THROW(solver.winner(initial_state(q, constant_tokens(q, 4), GameVariant::mixed)), CapExceeded);
  EXPECT_THROW(Solver({9, 3}), CapExceeded);
}

TEST(Solver, CapsFromEnvironment) {
  ::setenv("RANKDUEL_CAPS", "7,5", 1);
  const auto caps = caps_from_env();
  EXPECT_EQ(caps.max_vertices, 7u);
  EXPECT_EQ(caps.max_tokens, 5);
  ::setenv("RANKDUEL_CAPS", "bad", 1);
  EXPECT_THROW(caps_from_env(), std::invalid_argument);
  ::unsetenv("RANKDUEL_CAPS");
  EXPECT_EQ(caps_from_env().max_vertices, SolverCaps{}.max_vertices);
}

TEST(Solver, BestMovesPreserveTheWin) {
  Solver solver({6, 4});
  for (const auto& g : graph_classes(4, true))
    for (const auto& f : vectors(4, 3)) {
      const auto s = initial_state(g, tokens_in_order(g, f), GameVariant::mixed);
      if (solver.ranker_wins(s)) {
        EXPECT_TRUE(solver.winning_taxer_moves(s).empty());
        for (RoundKind kind : {RoundKind::low, RoundKind::high}) {
          const TaxerMove t{kind, g.vertex_set(), std::nullopt};
          EXPECT_TRUE(solver.ranker_wins(apply_round(s, t, solver.best_ranker_move(s, t))));
        }
      } else {
        const auto moves = solver.winning_taxer_moves(s);
        ASSERT_FALSE(moves.empty());
        for (const auto& r : surviving_replies(s, moves.front()))
          EXPECT_FALSE(solver.ranker_wins(apply_round(s, moves.front(), r)));
      }
    }
}

TEST(Solver, OptimalPlayersReproduceTheSolvedWinner) {
  auto solver = std::make_shared<Solver>(SolverCaps{6, 4});
  for (const auto& g : graph_classes(4, false))
    for (const auto& f : vectors(4, 2)) {
      const auto s = initial_state(g, tokens_in_order(g, f), GameVariant::mixed);
      const auto tr = play_game(s, solver_taxer(solver), solver_ranker(solver));
      EXPECT_FALSE(tr.forfeit);
      EXPECT_EQ(tr.outcome == Outcome::ranker_win, solver->ranker_wins(s));
    }
}

TEST(Exhaustive, CheckersReportCounterexamples) {
  const Graph p = path_graph(3);
  const auto s = initial_state(p, constant_tokens(p, 1), GameVariant::mixed);
  const auto res = ranker_never_loses(s, ranker_sorted_distinct());
  EXPECT_FALSE(res.ok);
  ASSERT_TRUE(res.counterexample);
  auto solver = std::make_shared<Solver>(SolverCaps{6, 4});
  EXPECT_TRUE(taxer_always_wins(s, solver_taxer(solver)).ok);
  EXPECT_FALSE(solve_against(s, solver_taxer(solver)));
  const auto easy = initial_state(p, constant_tokens(p, 2), GameVariant::mixed);
  EXPECT_FALSE(taxer_always_wins(easy, solver_taxer(solver)).ok);
  EXPECT_TRUE(solve_against(easy, solver_taxer(solver)));
}
