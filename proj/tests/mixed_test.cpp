#include "intransit/mixed.hpp"

#include <gtest/gtest.h>

#include "grid_oracle.hpp"
#include "test_util.hpp"

namespace intransit {
namespace {

using testing::bundled;

TEST(MixedTest, ExploitabilityExamples) {
  const auto rps = bundled("rps");
  EXPECT_NEAR(exploitability(rps, MixedStrategy::uniform(3), MixedStrategy::uniform(3)), 0.0, 1e-12);
  EXPECT_NEAR(exploitability(rps, MixedStrategy::pure(3, 1), MixedStrategy::uniform(3)), 1.0, 1e-12);
  const auto dice = bundled("dice");
  EXPECT_NEAR(exploitability(dice, MixedStrategy::pure(6, 6), MixedStrategy::pure(6, 6)), 0.0,
              1e-12);
  EXPECT_THROW(exploitability(rps, MixedStrategy::uniform(2), MixedStrategy::uniform(3)),
               ShapeMismatch);
}

TEST(MixedTest, ExploitabilityIsNonNegative) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_mix = [&](int n) {
    MixedStrategy m;
    double total = 0;
    for (int k = 0; k < n; ++k) total += m.probs.emplace_back(u(rng));
    for (auto& p : m.probs) p /= total;
    return m;
  };
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = testing::random_table(rng, 1 + trial % 5, 1 + trial % 7);
    const auto r = random_mix(g.rows());
    const auto c = random_mix(g.cols());
    ASSERT_TRUE(r.valid());
    ASSERT_GE(exploitability(g, r, c), -1e-12);
  }
}

TEST(MixedTest, PureNashCellsAreExact) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = testing::random_table(rng, 2 + trial % 4, 2 + trial % 3);
    for (int i = 1; i <= g.rows(); ++i) {
      for (int j = 1; j <= g.cols(); ++j) {
        bool saddle = true;
        for (int k = 1; k <= g.rows(); ++k) saddle = saddle && to_int(g.at(k, j)) <= to_int(g.at(i, j));
        for (int l = 1; l <= g.cols(); ++l) saddle = saddle && to_int(g.at(i, l)) >= to_int(g.at(i, j));
        if (!saddle) continue;
        ASSERT_NEAR(exploitability(g, MixedStrategy::pure(g.rows(), i),
                                   MixedStrategy::pure(g.cols(), j)),
                    0.0, 1e-12);
      }
    }
  }
}

TEST(MixedTest, FictitiousPlayOnRps) {
  const auto r = fictitious_play(bundled("rps"), 100000, 1e-2);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.exploitability, 1e-2);
  for (double p : r.row.probs) EXPECT_NEAR(p, 1.0 / 3, 0.01);
  for (double p : r.col.probs) EXPECT_NEAR(p, 1.0 / 3, 0.01);
  EXPECT_NEAR(r.value, 0.0, 1e-2);
  EXPECT_NEAR(exploitability(bundled("rps"), r.row, r.col), r.exploitability, 1e-9);
}

TEST(MixedTest, FictitiousPlayExamples) {
  const auto dice = fictitious_play(bundled("dice"), 100000, 1e-3);
  EXPECT_GE(dice.row.probs[5], 0.99);
  EXPECT_NEAR(dice.value, 0.0, 1e-3);
  const auto one = fictitious_play(GameTable::from_ints("w", {{1}}), 10, 1e-3);
  EXPECT_EQ(one.row.probs, std::vector<double>{1.0});
  EXPECT_EQ(one.col.probs, std::vector<double>{1.0});
  EXPECT_DOUBLE_EQ(one.value, 1.0);
  EXPECT_TRUE(one.converged);
}

TEST(MixedTest, FlagsMissedTolerance) {
  const auto r = fictitious_play(bundled("rps"), 5, 1e-6);
  EXPECT_FALSE(r.converged);
  EXPECT_TRUE(r.row.valid());
  EXPECT_TRUE(r.col.valid());
  EXPECT_GT(r.exploitability, 1e-6);
}

TEST(MixedTest, AgreesWithGridOracle) {
  for (const char* name : {"rps", "pennies", "firstmover", "single", "well"}) {
    const auto g = bundled(name);
    ASSERT_LE(g.rows(), 4);
    ASSERT_LE(g.cols(), 4);
    const auto [lo, hi] = testing::grid_bounds(g);
    const auto r = fictitious_play(g, 200000, 1e-3);
    EXPECT_TRUE(r.row.valid() && r.col.valid()) << name;
    EXPECT_NEAR(r.value, (lo + hi) / 2, 1e-2) << name << " bounds " << lo << " " << hi;
    if (g.symmetric_flag()) EXPECT_NEAR(r.value, 0.0, 1e-3) << name;
  }
}

TEST(MixedTest, RandomTablesAreCertified) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = testing::random_table(rng, 2 + trial % 3, 2 + trial % 2);
    const auto r = fictitious_play(g, 200000, 1e-2);
    const auto [lo, hi] = testing::grid_bounds(g);
    ASSERT_TRUE(r.row.valid());
    // Exploitability bounds the distance of the estimate to the true value.
    EXPECT_LE(r.value, hi + r.exploitability + 1e-9);
    EXPECT_GE(r.value, lo - r.exploitability - 1e-9);
  }
}

}  // namespace
}  // namespace intransit
