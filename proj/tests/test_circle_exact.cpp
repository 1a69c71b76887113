#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hemi/circle_exact.hpp"
#include "hemi/hemisphere.hpp"

namespace hemi {
namespace {

constexpr double pi = std::numbers::pi;

CircleConfiguration random_circle(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2 * pi);
  for (;;) {
    std::vector<double> a(n);
    for (double& x : a) x = u(rng);
    try {
      return CircleConfiguration(a);
    } catch (const NonGeneric&) {
    }
  }
}

void expect_sweep_invariants(const SweepSequence& s, std::size_t n) {
  ASSERT_EQ(s.counts.size(), n + 1);
  EXPECT_EQ(s.counts.front() + s.counts.back(), static_cast<int>(n));
  for (std::size_t i = 0; i + 1 < s.counts.size(); ++i) EXPECT_EQ(std::abs(s.counts[i + 1] - s.counts[i]), 1);
}

TEST(ExactProbability, ClosedForms) {
  EXPECT_EQ(exact_probability(2, 4)->str(), "1/8");
  EXPECT_EQ(exact_probability(3, 5)->str(), "1/16");
  EXPECT_EQ(exact_probability(1, 3)->str(), "1/4");
  EXPECT_EQ(exact_probability(1, 5)->str(), "1/16");
  EXPECT_EQ(exact_probability(1, 4)->str(), "1/2");
  EXPECT_EQ(exact_probability(1, 6)->str(), "1/4");
  EXPECT_EQ(exact_probability(1, 8)->str(), "1/8");
  EXPECT_EQ(exact_probability(3, 4)->str(), "1");
  EXPECT_FALSE(exact_probability(2, 6).has_value());
  EXPECT_FALSE(exact_probability(2, 7).has_value());
  for (std::size_t dim = 1; dim <= 8; ++dim)
    for (std::size_t n = 1; n <= dim + 1; ++n) EXPECT_EQ(*exact_probability(dim, n), ExactProbability(1, 1));
}

TEST(ExactProbability, LargeExponentsStayExact) {
  auto p = exact_probability(1, 201);  // 4^-100
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->denominator(), BigInt(1) << 200);
  EXPECT_EQ(exact_probability(99, 101)->denominator(), BigInt(1) << 100);
}

TEST(ExactProbability, PositiveOnTheCircle) {
  for (std::size_t n = 1; n <= 60; ++n) EXPECT_GT(exact_probability(1, n)->numerator(), 0);
}

TEST(ExactProbability, ReducesFractions) {
  ExactProbability p(6, 8);
  EXPECT_EQ(p.str(), "3/4");
  EXPECT_THROW(ExactProbability(3, 2), std::invalid_argument);
  EXPECT_THROW(ExactProbability(1, 0), std::invalid_argument);
}

TEST(CircleConfiguration, RejectsDuplicateAndAntipodalAngles) {
  EXPECT_THROW(CircleConfiguration({0.5, 0.5}), NonGeneric);
  EXPECT_THROW(CircleConfiguration({0.5, 0.5 + pi}), NonGeneric);
  EXPECT_THROW(CircleConfiguration({0.5, 0.5 + 2 * pi}), NonGeneric);
  EXPECT_THROW(CircleConfiguration({0.0, pi}), NonGeneric);
  EXPECT_THROW(CircleConfiguration(std::vector<double>{}), std::invalid_argument);
  EXPECT_NO_THROW(CircleConfiguration({0.5, 0.6}));
}

TEST(SweepSequence, ClusteredPoints) {
  auto s = sweep_sequence(CircleConfiguration({0.1, 0.2, 0.3}));
  EXPECT_EQ(s.counts.front(), 3);
  expect_sweep_invariants(s, 3);
  EXPECT_EQ(s.counts, (std::vector<int>{3, 2, 1, 0}));
}

TEST(SweepSequence, EquilateralTriangle) {
  CircleConfiguration c({pi / 6, 5 * pi / 6, 3 * pi / 2});
  auto s = sweep_sequence(c);
  expect_sweep_invariants(s, 3);
  for (int v : s.counts) EXPECT_TRUE(v == 1 || v == 2);
  EXPECT_TRUE(is_balanced_circle(c));
}

TEST(SweepSequence, PointOnStartDiameter) {
  CircleConfiguration c({0.0, 1.0, 2.0, 4.0});
  expect_sweep_invariants(sweep_sequence(c), 4);
  EXPECT_EQ(is_balanced_circle(c), is_equator_balanced(c.embed()).balanced);
  CircleConfiguration d({pi, 0.4, 2.5});
  expect_sweep_invariants(sweep_sequence(d), 3);
  EXPECT_EQ(is_balanced_circle(d), is_equator_balanced(d.embed()).balanced);
}

TEST(SweepSequence, InvariantsOnRandomInputs) {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t n = 1 + rep % 12;
    expect_sweep_invariants(sweep_sequence(random_circle(n, rng)), n);
  }
}

TEST(IsBalancedCircle, QuadrantIsUnbalanced) {
  EXPECT_FALSE(is_balanced_circle(CircleConfiguration({0.2, 0.7, 1.3})));
}

TEST(IsBalancedCircle, AgreesWithGeneralBalanceTest) {
  std::mt19937_64 rng(42);
  int balanced = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    auto c = random_circle(3 + rep % 6, rng);
    const bool b = is_balanced_circle(c);
    ASSERT_EQ(b, is_equator_balanced(c.embed()).balanced) << "rep " << rep;
    balanced += b;
  }
  EXPECT_GT(balanced, 0);
  EXPECT_LT(balanced, 1000);
}

TEST(IsBalancedCircle, RotationAndReflectionInvariant) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 2 * pi);
  for (int rep = 0; rep < 500; ++rep) {
    auto c = random_circle(3 + rep % 6, rng);
    const double off = u(rng);
    std::vector<double> rotated, reflected;
    for (double a : c.angles()) {
      rotated.push_back(a + off);
      reflected.push_back(-a);
    }
    EXPECT_EQ(is_balanced_circle(CircleConfiguration(rotated)), is_balanced_circle(c));
    EXPECT_EQ(is_balanced_circle(CircleConfiguration(reflected)), is_balanced_circle(c));
  }
}

// Oracle: flip each subset of points explicitly and ask the general S^1
// balance test.
std::uint64_t brute_force_flip_count(const CircleConfiguration& c) {
  const std::size_t n = c.size();
  std::uint64_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<double> a(c.angles().begin(), c.angles().end());
    for (std::size_t j = 0; j < n; ++j)
      if ((mask >> j) & 1u) a[j] += pi;
    count += is_equator_balanced(CircleConfiguration(a).embed()).balanced;
  }
  return count;
}

TEST(FlipEnumeration, SmallCounts) {
  std::mt19937_64 rng(44);
  for (int rep = 0; rep < 10; ++rep) {
    EXPECT_EQ(flip_enumeration_count(random_circle(3, rng)), 2u);
    EXPECT_EQ(flip_enumeration_count(random_circle(4, rng)), 8u);
    EXPECT_EQ(flip_enumeration_count(random_circle(5, rng)), 2u);
    EXPECT_EQ(flip_enumeration_count(random_circle(6, rng)), 16u);
  }
}

TEST(FlipEnumeration, MatchesBruteForceOracle) {
  std::mt19937_64 rng(45);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      auto c = random_circle(n, rng);
      EXPECT_EQ(flip_enumeration_count(c), brute_force_flip_count(c)) << "n=" << n;
    }
  }
}

TEST(FlipEnumeration, RatioIsTheClosedForm) {
  std::mt19937_64 rng(46);
  for (std::size_t n = 3; n <= 10; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const auto count = flip_enumeration_count(random_circle(n, rng));
      EXPECT_EQ(ExactProbability(count, BigInt(1) << n), *exact_probability(1, n)) << "n=" << n;
    }
  }
}

TEST(FlipEnumeration, Budget) {
  std::mt19937_64 rng(47);
  EXPECT_THROW(flip_enumeration_count(random_circle(25, rng)), BudgetExceeded);
}

}  // namespace
}  // namespace hemi
