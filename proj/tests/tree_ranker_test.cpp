#include <gtest/gtest.h>

#include <functional>
#include <numeric>
#include <random>

#include "rankduel/enumerate.hpp"
#include "rankduel/tree_ranker.hpp"

using namespace rankduel;

namespace {

ListAssignment random_uniform_lists(std::mt19937_64& rng, const Graph& t, int size, int lo, int hi) {
  std::vector<int> universe(static_cast<std::size_t>(hi - lo + 1));
  std::iota(universe.begin(), universe.end(), lo);
  ListAssignment l;
  for (VertexId v : t.vertices()) {
    std::shuffle(universe.begin(), universe.end(), rng);
    l[v] = std::set<int>(universe.begin(), universe.begin() + size);
  }
  return l;
}

// Oracle: p witness leaves by exhaustive subset search, checking the
// neighbour condition and the distinct labels below m_u by brute force.
bool brute_special(const Graph& t, const TreeAnatomy& a, const ListAssignment& l, VertexId u) {
  const TreePart& part = a.parts.at(u);
  if (2 * part.q_prime < a.q) return false;
  const int m_u = *l.at(u).rbegin();
  const Graph sub = t.induced(part.vertices);
  std::vector<VertexId> cand;
  for (VertexId x : part.vertices)
    if (a.leaves.contains(x)) cand.push_back(x);
  const std::size_t p = static_cast<std::size_t>(a.p);
  if (cand.size() < p) return false;
  std::vector<bool> pick(cand.size(), false);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(p), pick.end(), true);
  do {
    VertexSet chosen;
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (pick[i]) chosen.insert(cand[i]);
    bool keeps = true;
    for (VertexId x : part.vertices) {
      if (sub.degree(x) < 2) continue;
      std::size_t left = 0;
      for (VertexId y : sub.neighbors(x)) left += chosen.contains(y) ? 0 : 1;
      keeps = keeps && left >= 2;
    }
    if (!keeps) continue;
    const std::vector<VertexId> vs(chosen.begin(), chosen.end());
    std::set<int> used;
    std::function<bool(std::size_t)> label = [&](std::size_t i) {
      if (i == vs.size()) return true;
      for (int c : l.at(vs[i])) {
        if (c >= m_u || used.contains(c)) continue;
        used.insert(c);
        if (label(i + 1)) return true;
        used.erase(c);
      }
      return false;
    };
    if (label(0)) return true;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return false;
}

void expect_valid_witness(const Graph& t, const TreeAnatomy& a, const ListAssignment& l, const SpecialWitness& w) {
  const TreePart& part = a.parts.at(w.u);
  EXPECT_EQ(w.m_u, *l.at(w.u).rbegin());
  ASSERT_EQ(w.leaves.size(), static_cast<std::size_t>(a.p));
  ASSERT_EQ(w.labels.size(), w.leaves.size());
  for (std::size_t i = 0; i < w.leaves.size(); ++i) {
    EXPECT_TRUE(a.leaves.contains(w.leaves[i]));
    EXPECT_TRUE(part.vertices.contains(w.leaves[i]));
    EXPECT_TRUE(l.at(w.leaves[i]).contains(w.labels[i]));
    EXPECT_LT(w.labels[i], w.m_u);
    if (i) EXPECT_LT(w.labels[i - 1], w.labels[i]);
  }
  const Graph sub = t.induced(part.vertices);
  const VertexSet chosen(w.leaves.begin(), w.leaves.end());
  for (VertexId x : part.vertices) {
    if (sub.degree(x) < 2) continue;
    std::size_t left = 0;
    for (VertexId y : sub.neighbors(x)) left += chosen.contains(y) ? 0 : 1;
    EXPECT_GE(left, 2u);
  }
}

const Graph& caterpillar() {
  static const Graph cat = caterpillar_graph(std::vector<std::size_t>{7, 8, 7});
  return cat;
}

}  // namespace

TEST(LeafyThreshold, Values) {
  EXPECT_EQ(leafy_threshold(1), 2);
  EXPECT_EQ(leafy_threshold(2), 8);
  EXPECT_EQ(leafy_threshold(3), 22);
  EXPECT_EQ(leafy_threshold(4), 52);
}

TEST(Anatomy, Star) {
  const auto a = analyze_tree(star_graph(5));
  EXPECT_EQ(a.p, 1);
  EXPECT_EQ(a.q, 5);
  const auto& part = a.parts.at(5);
  EXPECT_EQ(part.vertices.size(), 1u);
  EXPECT_EQ(part.q_prime, 1);
  EXPECT_EQ(a.pivot, 5u);
}

TEST(Anatomy, DoubleStarPartHoldsTheOtherCentre) {
  // Leaves 0,1 on x=5 and 2,3,4 on y=6.
  const auto a = analyze_tree(double_star_graph(2, 3));
  EXPECT_EQ(a.parts.at(5).vertices, (VertexSet{2, 3, 4, 6}));
  EXPECT_EQ(a.parts.at(5).q_prime, 3);
  EXPECT_EQ(a.parts.at(6).vertices, (VertexSet{0, 1, 5}));
  EXPECT_EQ(a.parts.at(6).q_prime, 2);
  EXPECT_EQ(a.pivot, 6u);
}

TEST(Anatomy, ChainVerticesBorrowFromTheirBranchEnd) {
  // Legs 1-2-3, 4-5-6, 7-8-9 on centre 0.
  const auto a = analyze_tree(spider_graph(3, 3));
  EXPECT_EQ(a.p, 7);
  EXPECT_FALSE(a.parts.at(1).borrowed_from);
  EXPECT_EQ(a.parts.at(1).vertices, (VertexSet{0, 4, 5, 6, 7, 8, 9}));
  ASSERT_TRUE(a.parts.at(2).borrowed_from);
  EXPECT_EQ(*a.parts.at(2).borrowed_from, 1u);
  EXPECT_EQ(a.parts.at(2).vertices, a.parts.at(1).vertices);
  // Legs of length 2: the middle vertices touch the centre and stay direct.
  const auto b = analyze_tree(spider_graph(3, 2));
  EXPECT_EQ(b.p, 4);
  for (VertexId u : b.internal) EXPECT_FALSE(b.parts.at(u).borrowed_from);
  EXPECT_EQ(b.parts.at(1).q_prime, 2);
}

TEST(Anatomy, CountingInvariantsOnAllSmallTrees) {
  for (std::size_t n = 3; n <= 10; ++n)
    for (const auto& t : all_trees(n)) {
      const auto a = analyze_tree(t);
      for (const auto& [u, part] : a.parts) {
        EXPECT_LT(part.p_u, a.p);
        EXPECT_LE(part.q_prime, part.q_u);
        // On a path both sides end in a leaf of the piece, so q_u = q = 2.
        if (a.q >= 3) EXPECT_LT(part.q_u, a.q);
        EXPECT_FALSE(part.vertices.contains(u));
        if (u != a.pivot) EXPECT_GE(2 * part.q_prime, a.q);
      }
      EXPECT_THROW(analyze_tree(cycle_graph(n)), std::invalid_argument);
    }
}

TEST(Special, UniformListsMakeEligibleVerticesSpecial) {
  const Graph& t = caterpillar();
  const auto a = analyze_tree(t);
  ListAssignment l;
  for (VertexId v : t.vertices())
    for (int c = 1; c <= 22; ++c) l[v].insert(c);
  for (VertexId u : a.internal) {
    const auto w = special_witness(t, a, l, u);
    EXPECT_EQ(w.has_value(), 2 * a.parts.at(u).q_prime >= a.q);
    if (w) {
      expect_valid_witness(t, a, l, *w);
    }
  }
}

TEST(Special, SeparatedListsAdmitNoSpecialVertex) {
  const Graph& t = caterpillar();
  const auto a = analyze_tree(t);
  ListAssignment l;
  for (VertexId v : t.vertices())
    for (int c = 1; c <= 22; ++c) l[v].insert(a.leaves.contains(v) ? c + 22 : c);
  EXPECT_FALSE(choose_special(t, a, l));
}

TEST(Special, AgreesWithSubsetSearch) {
  std::mt19937_64 rng(41);
  const Graph& t = caterpillar();
  const auto a = analyze_tree(t);
  int found = 0, missing = 0;
  for (int trial = 0; trial < 60; ++trial) {
    ListAssignment l = random_uniform_lists(rng, t, 22, 1, 60);
    if (trial % 2) {
      // Push internal lists low and leaf lists high so witnesses become rare.
      for (VertexId v : a.internal) l[v] = random_uniform_lists(rng, Graph(1), 22, 1, 24).at(0);
      for (VertexId v : a.leaves) l[v] = random_uniform_lists(rng, Graph(1), 22, 18, 60).at(0);
    }
    for (VertexId u : a.internal) {
      const auto w = special_witness(t, a, l, u);
      ASSERT_EQ(w.has_value(), brute_special(t, a, l, u));
      if (w) {
        expect_valid_witness(t, a, l, *w);
        ++found;
      } else {
        ++missing;
      }
    }
  }
  EXPECT_GT(found, 0);
  EXPECT_GT(missing, 0);
}

TEST(Special, AgreesWithSubsetSearchOnSmallTrees) {
  std::mt19937_64 rng(42);
  for (std::size_t n = 4; n <= 9; ++n)
    for (const auto& t : all_trees(n)) {
      const auto a = analyze_tree(t);
      for (int trial = 0; trial < 4; ++trial) {
        const auto l = random_uniform_lists(rng, t, a.q, 1, 2 * a.q);
        for (VertexId u : a.internal) {
          const auto w = special_witness(t, a, l, u);
          ASSERT_EQ(w.has_value(), brute_special(t, a, l, u));
          if (w) expect_valid_witness(t, a, l, *w);
        }
      }
    }
}

TEST(LeafyTree, PreconditionsAreEnforced) {
  const Graph s = star_graph(3);
  EXPECT_THROW(rank_leafy_tree(s, treebound_lists(s, s)), PreconditionError);
  const Graph small = caterpillar_graph(std::vector<std::size_t>{3, 3, 3});
  ListAssignment l;
  for (VertexId v : small.vertices())
    for (int c = 1; c <= 9; ++c) l[v].insert(c);
  EXPECT_THROW(rank_leafy_tree(small, l), PreconditionError);
  EXPECT_THROW(rank_leafy_tree(cycle_graph(4), {}), PreconditionError);
}

TEST(LeafyTree, DoubleStarUsesTheGame) {
  const Graph d = double_star_graph(2, 2);
  ListAssignment l;
  for (VertexId v : d.vertices()) l[v] = {1, 2, 3, 4};
  const auto rep = rank_leafy_tree_report(d, l);
  EXPECT_EQ(rep.route, "game");
  EXPECT_TRUE(rep.defects.empty());
  EXPECT_TRUE(is_list_ranking(d, l, rep.ranking));
}

TEST(LeafyTree, SmallTreesWithFewInternalVertices) {
  std::mt19937_64 rng(43);
  for (std::size_t n = 2; n <= 9; ++n)
    for (const auto& t : all_trees(n)) {
      const auto a_leaves = tree_leaves(t).size();
      const std::size_t p = n - a_leaves;
      if (p > 2 || (p >= 1 && a_leaves <= p)) continue;
      for (int trial = 0; trial < 5; ++trial) {
        const auto l = random_uniform_lists(rng, t, static_cast<int>(a_leaves), 1, 3 * static_cast<int>(a_leaves));
        const auto rep = rank_leafy_tree_report(t, l);
        EXPECT_TRUE(rep.defects.empty()) << rep.route;
        EXPECT_TRUE(is_list_ranking(t, l, rep.ranking));
      }
    }
}

TEST(LeafyTree, CaseWithoutSpecialVertex) {
  const Graph& t = caterpillar();
  const auto a = analyze_tree(t);
  ListAssignment l;
  for (VertexId v : t.vertices())
    for (int c = 1; c <= 22; ++c) l[v].insert(a.leaves.contains(v) ? c + 22 : c);
  auto rep = rank_leafy_tree_report(t, l);
  EXPECT_EQ(rep.route, "no-special");
  EXPECT_TRUE(rep.defects.empty());
  EXPECT_TRUE(is_list_ranking(t, l, rep.ranking));

  // The middle spine vertex holds the largest label anywhere.
  l[a.pivot].clear();
  for (int c = 23; c <= 44; ++c) l[a.pivot].insert(c);
  rep = rank_leafy_tree_report(t, l);
  EXPECT_EQ(rep.route, "no-special-top");
  EXPECT_TRUE(rep.defects.empty());
  EXPECT_TRUE(is_list_ranking(t, l, rep.ranking));
}

TEST(LeafyTree, RandomCaterpillarsAtTheThreshold) {
  std::mt19937_64 rng(44);
  std::map<std::string, int> routes;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t q = 22 + rng() % 4;
    const std::size_t x = 1 + rng() % (q - 2), z = 1 + rng() % (q - x - 1);
    const Graph t = caterpillar_graph(std::vector<std::size_t>{x, q - x - z, z});
    const int universe = trial % 3 == 0 ? static_cast<int>(q) + 3 : 80;
    const auto l = random_uniform_lists(rng, t, static_cast<int>(q), 1, universe);
    const auto rep = rank_leafy_tree_report(t, l);
    ++routes[rep.route];
    EXPECT_TRUE(rep.defects.empty()) << rep.route << ": " << (rep.defects.empty() ? "" : rep.defects.front());
    EXPECT_NE(rep.route, "fallback");
    EXPECT_TRUE(is_list_ranking(t, l, rep.ranking));
  }
  EXPECT_GT(routes["special"], 0);
}

TEST(LeafyTree, FourInternalVertices) {
  std::mt19937_64 rng(45);
  // Internal path of four vertices, and an internal star K_{1,3}.
  Graph path_spine = caterpillar_graph(std::vector<std::size_t>{13, 13, 13, 13});
  Graph star_spine = star_graph(3);
  for (VertexId c : {0u, 1u, 2u})
    for (int i = 0; i < 17; ++i) star_spine.add_edge(c, star_spine.add_vertex());
  star_spine.add_edge(3, star_spine.add_vertex());
  for (const Graph* t : {&path_spine, &star_spine}) {
    ASSERT_EQ(tree_leaves(*t).size(), 52u);
    for (int trial = 0; trial < 4; ++trial) {
      const auto l = random_uniform_lists(rng, *t, 52, 1, 130);
      const auto rep = rank_leafy_tree_report(*t, l);
      EXPECT_TRUE(rep.defects.empty()) << rep.route;
      EXPECT_TRUE(is_list_ranking(*t, l, rep.ranking));
    }
  }
}
