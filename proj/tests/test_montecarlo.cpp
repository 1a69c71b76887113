#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hemi/circle_exact.hpp"
#include "hemi/hemisphere.hpp"
#include "hemi/montecarlo.hpp"

namespace hemi {
namespace {

TEST(Xoshiro256, DeterministicAndDistinctPerTrial) {
  Xoshiro256 a = Xoshiro256::for_trial(7, 3), b = Xoshiro256::for_trial(7, 3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
  EXPECT_NE(Xoshiro256::for_trial(7, 3)(), Xoshiro256::for_trial(7, 4)());
  EXPECT_NE(Xoshiro256::for_trial(7, 3)(), Xoshiro256::for_trial(8, 3)());
}

TEST(Trial, DeterministicForFixedStream) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto a = Xoshiro256::for_trial(99, i);
    auto b = Xoshiro256::for_trial(99, i);
    EXPECT_EQ(trial(2, 6, a), trial(2, 6, b));
  }
}

TEST(Trial, TrivialWhenFewPoints) {
  Xoshiro256 rng(1);
  EXPECT_TRUE(trial(3, 4, rng));
  EXPECT_TRUE(trial(3, 2, rng));
}

TEST(Estimate, MatchesClosedFormsOnSmallCases) {
  const std::pair<std::size_t, std::size_t> cells[] = {{1, 3}, {2, 4}};
  for (auto [dim, n] : cells) {
    const auto e = estimate(dim, n, 1000000, 2024, 2);
    const double exact = exact_probability(dim, n)->value();
    EXPECT_LE(std::abs(e.p_hat - exact), 4 * e.sigma_p) << "N=" << dim << " n=" << n << " p_hat=" << e.p_hat;
  }
}

TEST(Estimate, IndependentOfWorkerCount) {
  const auto one = estimate(2, 6, 20000, 17, 1);
  for (std::size_t w : {2u, 3u, 8u}) {
    const auto many = estimate(2, 6, 20000, 17, w);
    EXPECT_EQ(many.successes, one.successes) << "workers " << w;
  }
  // More workers than trials.
  EXPECT_EQ(estimate(1, 3, 5, 1, 16).successes, estimate(1, 3, 5, 1, 1).successes);
}

TEST(Estimate, PositiveProbabilityForTwoSphereSixPoints) {
  const auto e = estimate(2, 6, 1000000, 5, 2);
  EXPECT_GE(e.successes, 1u);
}

TEST(Estimate, SummaryFields) {
  const auto e = summarize(2, 5, 1000, 250, 42, 1.5);
  EXPECT_EQ(e.p_hat, 0.25);
  EXPECT_DOUBLE_EQ(e.sigma_p, std::sqrt(0.25 * 0.75 / 1000));
  ASSERT_TRUE(e.inv_p_hat && e.precision_3sigma);
  EXPECT_EQ(*e.inv_p_hat, 4.0);
  EXPECT_DOUBLE_EQ(*e.precision_3sigma, 3.0 * 1000 / std::pow(250.0, 1.5));
  EXPECT_EQ(e.seed, 42u);
  const auto none = summarize(2, 9, 10, 0, 0);
  EXPECT_FALSE(none.inv_p_hat.has_value());
  EXPECT_FALSE(none.precision_3sigma.has_value());
}

TEST(Estimate, RejectsBadParameters) {
  EXPECT_THROW(estimate(2, 5, 0, 1, 1), std::invalid_argument);
  EXPECT_THROW(estimate(2, 5, 10, 1, 0), std::invalid_argument);
  EXPECT_THROW(estimate(0, 5, 10, 1, 1), std::invalid_argument);
}

TEST(PrecisionCheck, TableRows) {
  EXPECT_NEAR(precision_check(889631743ULL, 277996246ULL), 0.00057, 0.00002);
  EXPECT_NEAR(precision_check(115638779856ULL, 42369783ULL), 1.25, 0.02);
  EXPECT_DOUBLE_EQ(precision_check(100, 100), 0.3);
  EXPECT_THROW(precision_check(100, 0), std::invalid_argument);
}

TEST(Trial, EarlyExitAgreesWithFullEnumeration) {
  // Replays each trial's configuration and judges it from the complete list
  // of subset side counts.
  int balanced = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const std::size_t dim = 1 + i % 3;
    const std::size_t n = dim + 2 + i % 4;
    auto rng = Xoshiro256::for_trial(123, i);
    const bool fast = trial(dim, n, rng);

    auto replay = Xoshiro256::for_trial(123, i);
    const auto c = sample_configuration(dim, n, replay);
    const auto full = max_closed_hemisphere(c, kDefaultTolerance, true);
    bool all = true;
    for (const auto& s : *full.per_subset) {
      ASSERT_EQ(s.sides.on_circle, 0u);
      const auto hi = std::max(s.sides.positive, s.sides.negative);
      const auto lo = std::min(s.sides.positive, s.sides.negative);
      all = all && hi - lo <= 1;
    }
    ASSERT_EQ(fast, all) << "trial " << i;
    balanced += all;
  }
  EXPECT_GT(balanced, 0);
}

}  // namespace
}  // namespace hemi
