#include <gtest/gtest.h>

#include <random>

#include "rankduel/dyadic.hpp"
#include "rankduel/strategies.hpp"

using namespace rankduel;

namespace {

// Oracle: a dyadic as an exact fraction over 2^40.
std::int64_t over_2_40(const Dyadic& d) {
  return static_cast<std::int64_t>(d.numerator()) << (40 - d.exponent());
}

}  // namespace

TEST(Dyadic, CanonicalForm) {
  const Dyadic half = Dyadic::fraction(4, 3);
  EXPECT_EQ(half.numerator(), 1u);
  EXPECT_EQ(half.exponent(), 1u);
  EXPECT_EQ(Dyadic::fraction(0, 9).exponent(), 0u);
  EXPECT_EQ(Dyadic::fraction(6, 2).to_string(), "3/2");
  EXPECT_EQ(Dyadic::integer(3).to_string(), "3");
}

TEST(Dyadic, SumsMatchIntegerOracle) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    Dyadic a = Dyadic::fraction(rng() % 1000, static_cast<unsigned>(rng() % 20));
    Dyadic b = Dyadic::fraction(rng() % 1000, static_cast<unsigned>(rng() % 20));
    EXPECT_EQ(over_2_40(a + b), over_2_40(a) + over_2_40(b));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a < b, over_2_40(a) < over_2_40(b));
    if (!(a < b)) {
      EXPECT_EQ(over_2_40(a - b), over_2_40(a) - over_2_40(b));
    } else {
      EXPECT_THROW(a - b, std::domain_error);
    }
  }
}

TEST(Dyadic, AdditionIsAssociative) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    Dyadic x[3];
    for (auto& d : x) d = Dyadic::fraction(rng() % 5000, static_cast<unsigned>(rng() % 30));
    EXPECT_EQ((x[0] + x[1]) + x[2], x[0] + (x[1] + x[2]));
  }
}

TEST(Dyadic, ScalingAndPowers) {
  EXPECT_EQ(Dyadic::pow2(-3).scaled(3), Dyadic::integer(1));
  EXPECT_EQ(Dyadic::pow2(5), Dyadic::integer(32));
  EXPECT_THROW(Dyadic::pow2(64), std::overflow_error);
  EXPECT_DOUBLE_EQ(Dyadic::fraction(33, 5).to_double(), 33.0 / 32.0);
}

TEST(Sigma, CopiesOfOneTokenCount) {
  for (int k = 0; k <= 10; ++k)
    for (int n = 0; n <= 40; ++n) {
      std::vector<int> f(n, k);
      EXPECT_EQ(sigma(f), Dyadic::fraction(static_cast<std::uint64_t>(n), static_cast<unsigned>(k)));
    }
}

TEST(Sigma, HandValues) {
  EXPECT_EQ(sigma(std::vector<int>{3, 1, 2, 3}), Dyadic::integer(1));
  EXPECT_EQ(sigma(std::vector<int>{2, 3, 1, 3, 5}), Dyadic::fraction(33, 5));
  EXPECT_EQ(sigma(std::vector<int>{}), Dyadic());
  EXPECT_EQ(sigma(std::vector<int>{0}), Dyadic::integer(1));
}

TEST(Tau, HandValues) {
  EXPECT_EQ(tau(std::vector<int>{1, 2, 3}), Dyadic::fraction(3, 2));
  EXPECT_EQ(tau(std::vector<int>(5, 3)), Dyadic::integer(1));
  EXPECT_THROW(tau(std::vector<int>{}), std::invalid_argument);
}

// Oracle: re-implements the sort-and-split definition with doubles scaled to
// integers over 2^20.
TEST(Tau, MatchesSortAndSplitOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<int> f(1 + rng() % 6);
    for (int& x : f) x = 1 + static_cast<int>(rng() % 5);
    std::vector<int> s = f;
    std::sort(s.begin(), s.end());
    std::size_t k = s.size() - 1;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (s[i] == s[i + 1]) {
        k = i;
        break;
      }
    std::int64_t want = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::int64_t w = std::int64_t{1} << (20 - s[i]);
      if (i < k) want += w;
      if (i > k) want += 2 * w;
    }
    const Dyadic got = tau(f);
    EXPECT_EQ(static_cast<std::int64_t>(got.numerator()) << (20 - got.exponent()), want);
    EXPECT_LT(got, sigma(f).scaled(1));
  }
}

TEST(Potentials, CycleBound) {
  EXPECT_EQ(cycle_sigma_bound(3), Dyadic::fraction(3, 2));
  EXPECT_EQ(cycle_sigma_bound(5), Dyadic::fraction(5, 3));
  EXPECT_EQ(cycle_sigma_bound(8), Dyadic::fraction(5, 3));
}
