#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "hemi/config_io.hpp"
#include "hemi/constructions.hpp"
#include "test_support.hpp"

namespace hemi {
namespace {

TEST(ConfigIo, ParsesPointsAndMeta) {
  auto f = parse_config(std::string(R"({"dim": 2, "points": [[1,0,0],[0,1,0]],
      "meta": {"label": "axes", "seed": 9, "generator": "manual", "integers": [[1,0,0],[0,"1",0]]}})"));
  EXPECT_EQ(f.dim, 2u);
  ASSERT_EQ(f.points.size(), 2u);
  EXPECT_EQ(*f.meta.label, "axes");
  EXPECT_EQ(*f.meta.seed, 9u);
  EXPECT_EQ((*f.meta.integers)[1][1], 1);
  auto c = to_configuration(f);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(*c.label(), "axes");
}

TEST(ConfigIo, AnglesOnCircle) {
  auto c = to_configuration(parse_config(std::string(R"({"dim": 1, "angles": [0, 1.5707963267948966]})")));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_NEAR(c.point(1)[1], 1.0, 1e-15);
  EXPECT_THROW(parse_config(std::string(R"({"dim": 2, "angles": [0, 1]})")), ConfigError);
}

TEST(ConfigIo, MalformedInputs) {
  const char* bad[] = {
      R"([1,2])",
      R"({"points": [[1,0]]})",
      R"({"dim": 0, "points": [[1]]})",
      R"({"dim": 2, "points": [[1,0]]})",
      R"({"dim": 1, "points": []})",
      R"({"dim": 1, "points": [[1,"x"]]})",
      R"({"dim": 1, "points": [[1,0]], "angles": [0]})",
      R"({"dim": 1, "points": [[1,0]], "meta": {"integers": [[0,0]]}})",
      R"({"dim": 1, "points": [[1,0]], "meta": {"integers": [[1.5,0]]}})",
      R"({"dim": 1, "points": [[1,0]],)",
  };
  for (const char* text : bad) EXPECT_THROW(parse_config(std::string(text)), ConfigError) << text;
  EXPECT_THROW(read_config("/nonexistent/config.json"), ConfigError);
}

TEST(ConfigIo, NormTolerance) {
  std::vector<std::string> warnings;
  auto slightly_off = parse_config(std::string(R"({"dim": 1, "points": [[1.0000001, 0]]})"));
  auto c = to_configuration(slightly_off, &warnings);
  EXPECT_EQ(c.point(0)[0], 1.0);
  ASSERT_EQ(warnings.size(), 1u);
  auto far_off = parse_config(std::string(R"({"dim": 1, "points": [[1.001, 0]]})"));
  EXPECT_THROW(to_configuration(far_off), ConfigError);
}

TEST(ConfigIo, BigIntegersSurviveRoundTrip) {
  auto v = vandermonde_config(16, 40);  // 40^16 does not fit in 64 bits
  ConfigMeta meta;
  meta.integers = v.integer_points;
  const auto text = dump_config(to_config_file(v.normalized, meta));
  const auto back = parse_config(text);
  ASSERT_TRUE(back.meta.integers.has_value());
  EXPECT_EQ(*back.meta.integers, v.integer_points);
}

TEST(ConfigIo, WriteReadWriteIsByteStable) {
  std::mt19937_64 rng(51);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t dim = 1 + rep % 5;
    auto c = testing::random_configuration(dim, 1 + rep % 9, rng);
    const auto first = dump_config(to_config_file(c));
    const auto reread = to_configuration(parse_config(first));
    EXPECT_TRUE(std::equal(c.packed().begin(), c.packed().end(), reread.packed().begin(), reread.packed().end()));
    EXPECT_EQ(dump_config(to_config_file(reread)), first);
  }
}

}  // namespace
}  // namespace hemi
