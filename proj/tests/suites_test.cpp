#include <gtest/gtest.h>

#include <set>

#include "rankduel/suites.hpp"

using namespace rankduel;

TEST(Suites, CeilLog2) {
  EXPECT_EQ(ceil_log2(1), 0);
  EXPECT_EQ(ceil_log2(2), 1);
  EXPECT_EQ(ceil_log2(3), 2);
  EXPECT_EQ(ceil_log2(8), 3);
  EXPECT_EQ(ceil_log2(9), 4);
}

TEST(Suites, SharpTokensSitExactlyOnTheThreshold) {
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto f = path_sharp_tokens(n);
    EXPECT_EQ(sigma(f), Dyadic::integer(1)) << n;
    EXPECT_FALSE(is_f_rankable(path_graph(n), tokens_in_order(path_graph(n), f))) << n;
  }
  EXPECT_EQ(path_sharp_tokens(4), (std::vector<int>{2, 2, 2, 2}));
  EXPECT_EQ(path_sharp_tokens(5), (std::vector<int>{3, 2, 2, 2, 3}));
}

TEST(Suites, UnknownSuiteThrows) { EXPECT_THROW(run_suite("nope"), std::invalid_argument); }

TEST(Suites, EveryCriterionBelongsToExactlyOneSuite) {
  // Only cheap suites are run here; the rest are covered by the acceptance binary.
  std::multiset<std::string> ids;
  SuiteOptions opt;
  opt.trials = 20;
  for (const char* name : {"cycles", "stars"})
    for (const auto& c : run_suite(name, opt).claims) ids.insert(c.id);
  EXPECT_EQ(ids, (std::multiset<std::string>{"AC3", "AC9"}));
  EXPECT_EQ(suite_names().size(), 7u);
}

TEST(Suites, ReportsAreReproducible) {
  SuiteOptions opt;
  opt.trials = 200;
  opt.seed = 5;
  const auto a = to_json(run_suite("paths", opt)).dump();
  opt.jobs = 3;
  EXPECT_EQ(to_json(run_suite("paths", opt)).dump(), a);
}

TEST(Suites, ClaimExceptionsBecomeFailures) {
  const Claim c = detail::run_claim("X", "throws", [](Claim&) { throw std::runtime_error("boom"); });
  EXPECT_FALSE(c.pass);
  EXPECT_NE(c.observed.find("boom"), std::string::npos);
}

TEST(Suites, ParallelForVisitsEachIndexOnce) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(hits.size(), 4, [&](std::size_t i, unsigned) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}
