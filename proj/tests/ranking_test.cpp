#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "rankduel/enumerate.hpp"
#include "rankduel/ranking.hpp"

using namespace rankduel;

namespace {

// Oracle: the path definition. Any two equal labels must see a strictly
// larger label inside every simple path joining them.
bool ranking_by_paths(const Graph& g, const Ranking& a) {
  bool ok = true;
  std::function<void(VertexId, VertexId, int, VertexSet&)> walk = [&](VertexId start, VertexId cur, int inner_max,
                                                                       VertexSet& seen) {
    for (VertexId w : g.neighbors(cur)) {
      if (!ok || seen.contains(w)) continue;
      if (a.at(w) == a.at(start) && inner_max <= a.at(start)) ok = false;
      seen.insert(w);
      walk(start, w, std::max(inner_max, a.at(w)), seen);
      seen.erase(w);
    }
  };
  for (VertexId v : g.vertices()) {
    VertexSet seen{v};
    walk(v, v, 0, seen);
  }
  return ok;
}

Graph random_graph(std::mt19937_64& rng, std::size_t n, unsigned pct) {
  Graph g(n);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (rng() % 100 < pct) g.add_edge(u, v);
  return g;
}

// Oracle: every labelling drawn from the lists.
bool brute_list_rankable(const Graph& g, const ListAssignment& l) {
  const auto vs = g.vertices();
  Ranking a;
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == vs.size()) return ranking_by_paths(g, a);
    for (int c : l.at(vs[i])) {
      a[vs[i]] = c;
      if (go(i + 1)) return true;
    }
    return false;
  };
  return go(0);
}

int brute_tree_depth(const Graph& g) {
  for (int k = 0;; ++k) {
    ListAssignment l;
    for (VertexId v : g.vertices())
      for (int c = 1; c <= k; ++c) l[v].insert(c);
    if (g.empty() || (k > 0 && brute_list_rankable(g, l))) return k;
  }
}

ListAssignment random_lists(std::mt19937_64& rng, const Graph& g, int size, int universe) {
  ListAssignment l;
  for (VertexId v : g.vertices())
    while (static_cast<int>(l[v].size()) < size) l[v].insert(1 + static_cast<int>(rng() % universe));
  return l;
}

}  // namespace

TEST(IsRanking, HandExamples) {
  const Graph p3 = path_graph(3);
  EXPECT_TRUE(is_ranking(p3, {{0, 1}, {1, 2}, {2, 1}}));
  EXPECT_FALSE(is_ranking(p3, {{0, 2}, {1, 1}, {2, 2}}));
  EXPECT_FALSE(is_ranking(path_graph(2), {{0, 1}, {1, 1}}));
  EXPECT_THROW(is_ranking(p3, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(is_ranking(p3, {{0, 0}, {1, 1}, {2, 2}}), std::invalid_argument);
}

TEST(IsRanking, AgreesWithPathDefinition) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    const Graph g = random_graph(rng, 1 + rng() % 7, static_cast<unsigned>(rng() % 100));
    Ranking a;
    for (VertexId v : g.vertices()) a[v] = 1 + static_cast<int>(rng() % 4);
    EXPECT_EQ(is_ranking(g, a), ranking_by_paths(g, a));
  }
}

TEST(TreeDepth, MatchesBruteForce) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& g : graph_classes(n, false)) EXPECT_EQ(tree_depth(g), brute_tree_depth(g));
  EXPECT_EQ(tree_depth(Graph()), 0);
}

TEST(TreeDepth, Families) {
  EXPECT_EQ(tree_depth(path_graph(7)), 3);
  EXPECT_EQ(tree_depth(path_graph(8)), 4);
  EXPECT_EQ(tree_depth(cycle_graph(8)), 4);
  EXPECT_EQ(tree_depth(complete_graph(5)), 5);
  EXPECT_EQ(tree_depth(star_graph(9)), 2);
  EXPECT_THROW(tree_depth(path_graph(16)), CapExceeded);
}

TEST(FindListRanking, AgreesWithBruteForceAndElimination) {
  std::mt19937_64 rng(12);
  int rankable = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const Graph g = random_graph(rng, 1 + rng() % 6, static_cast<unsigned>(20 + rng() % 70));
    const auto l = random_lists(rng, g, 1 + static_cast<int>(rng() % 3), 5);
    const auto found = find_list_ranking(g, l);
    const bool oracle = brute_list_rankable(g, l);
    EXPECT_EQ(found.has_value(), oracle);
    EXPECT_EQ(detail::rankable_by_elimination(g, l), oracle);
    if (found) {
      EXPECT_TRUE(is_list_ranking(g, l, *found));
      ++rankable;
    }
  }
  EXPECT_GT(rankable, 100);
  EXPECT_LT(rankable, 1400);
}

TEST(FRankability, ReportsEmptyLists) {
  const Graph p2 = path_graph(2);
  EXPECT_EQ(f_rankability(p2, {{0, 0}, {1, 3}}), FRankability::empty_list);
  EXPECT_EQ(f_rankability(p2, {{0, 1}, {1, 1}}), FRankability::not_rankable);
  EXPECT_EQ(f_rankability(p2, {{0, 1}, {1, 2}}), FRankability::rankable);
}

TEST(ListRankingNumber, SmallGraphs) {
  EXPECT_EQ(list_ranking_number(Graph(), 3), 0);
  EXPECT_EQ(list_ranking_number(Graph(1), 3), 1);
  EXPECT_EQ(list_ranking_number(path_graph(2), 3), 2);
  EXPECT_EQ(list_ranking_number(star_graph(3), 3), 3);
  EXPECT_EQ(list_ranking_number(complete_graph(3), 3), 3);
  EXPECT_THROW(list_ranking_number(path_graph(5), 3), CapExceeded);
}

// Oracle: k-uniform lists over {1..n*k} cover every order type, so the
// exhaustive search over such lists must agree with the order-type search.
TEST(ListRankingNumber, AgreesWithExhaustiveListsOnTinyGraphs) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& g : graph_classes(n, false))
      for (int k = 1; k <= 2; ++k) {
        const int universe = static_cast<int>(n) * k;
        std::vector<std::set<int>> subsets;
        for (unsigned m = 0; m < (1u << universe); ++m)
          if (std::popcount(m) == k) {
            std::set<int> s;
            for (int b = 0; b < universe; ++b)
              if (m >> b & 1u) s.insert(b + 1);
            subsets.push_back(s);
          }
        bool all = true;
        const auto vs = g.vertices();
        std::vector<std::size_t> idx(vs.size(), 0);
        while (all) {
          ListAssignment l;
          for (std::size_t i = 0; i < vs.size(); ++i) l[vs[i]] = subsets[idx[i]];
          all = brute_list_rankable(g, l);
          std::size_t i = 0;
          while (i < idx.size() && ++idx[i] == subsets.size()) idx[i++] = 0;
          if (i == idx.size()) break;
        }
        EXPECT_EQ(detail::UniformListSearch(g, k).all_rankable(), all) << canonical_form(g) << " k=" << k;
      }
}

TEST(TreeBoundLists, StarNeedsAsManyLabelsAsLeaves) {
  for (std::size_t q = 2; q <= 5; ++q) {
    const Graph s = star_graph(q);
    const auto l = treebound_lists(s, s);
    for (auto& [v, list] : l) EXPECT_EQ(list.size(), q - 1);
    EXPECT_FALSE(find_list_ranking(s, l));
    EXPECT_FALSE(brute_list_rankable(s, l));
  }
  EXPECT_THROW(treebound_lists(cycle_graph(4), cycle_graph(4)), std::invalid_argument);
}
