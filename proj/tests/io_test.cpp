#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "rankduel/io.hpp"

using namespace rankduel;

TEST(Io, GraphRoundTrip) {
  const Graph g = double_star_graph(2, 3);
  const json j = to_json(g);
  EXPECT_EQ(graph_from_json(j), g);
  EXPECT_EQ(j.at("edges").size(), g.size());
  EXPECT_THROW(graph_from_json(json::parse(R"({"vertices":[0,1],"edges":[[0]]})")), std::invalid_argument);
}

TEST(Io, ListsAndRankings) {
  const auto l = lists_from_json(json::parse(R"({"0":[1,2],"1":[3,4]})"));
  EXPECT_EQ(l.at(1), (std::set<int>{3, 4}));
  EXPECT_EQ(lists_from_json(to_json(l)), l);
  EXPECT_THROW(lists_from_json(json::parse(R"({"0":[]})")), std::invalid_argument);
  EXPECT_THROW(lists_from_json(json::parse(R"({"0":[0]})")), std::invalid_argument);
  const Ranking a{{0, 1}, {4, 2}};
  EXPECT_EQ(ranking_from_json(ranking_to_json(a)), a);
}

TEST(Io, TranscriptShape) {
  Transcript tr;
  tr.variant = GameVariant::mixed;
  tr.rounds.push_back({RoundKind::low, {0, 1}, {0}, std::nullopt, {}, {}});
  tr.outcome = Outcome::ranker_win;
  const json j = to_json(tr);
  EXPECT_EQ(j.dump(), R"({"outcome":"ranker","rounds":[{"R":[0],"T":[0,1],"kind":"low"}],"variant":"mixed"})");
}

TEST(Io, FamilyDescriptors) {
  EXPECT_TRUE(is_path(parse_family("path:5")));
  EXPECT_TRUE(is_cycle(parse_family("cycle:6")));
  EXPECT_EQ(parse_family("star:4").order(), 5u);
  EXPECT_EQ(parse_family("dstar:2,3").order(), 7u);
  EXPECT_EQ(parse_family("clique:4").size(), 6u);
  EXPECT_EQ(parse_family("kpend:3,2").order(), 5u);
  EXPECT_EQ(parse_family("cat:7,8,7").order(), 25u);
  EXPECT_EQ(parse_family("spider:3,2").order(), 7u);
  EXPECT_THROW(parse_family("path"), std::invalid_argument);
  EXPECT_THROW(parse_family("path:2,3"), std::invalid_argument);
  EXPECT_THROW(parse_family("wheel:5"), std::invalid_argument);

  const std::string file = ::testing::TempDir() + "rankduel_graph.json";
  std::ofstream(file) << to_json(cycle_graph(4)).dump();
  EXPECT_EQ(parse_family("file:" + file), cycle_graph(4));
  std::remove(file.c_str());
}

TEST(Io, TokenSpecs) {
  const Graph p = path_graph(3);
  EXPECT_EQ(parse_tokens("2", p), constant_tokens(p, 2));
  EXPECT_EQ(parse_tokens("1,2,3", p), tokens_in_order(p, {1, 2, 3}));
  EXPECT_THROW(parse_tokens("1,2", p), std::invalid_argument);
}
