#include "intransit/game.hpp"

#include <gtest/gtest.h>

#include <set>

#include "test_util.hpp"

namespace intransit {
namespace {

using testing::bundled;

TEST(GameTest, ParsesRockPaperScissors) {
  const auto rps = bundled("rps");
  EXPECT_EQ(rps.name(), "rps");
  EXPECT_TRUE(rps.symmetric_flag());
  EXPECT_EQ(rps.rows(), 3);
  EXPECT_EQ(rps.cols(), 3);
  // Row R: draws R, loses to P, beats S.
  EXPECT_EQ(outcome(rps, 1, 1), Outcome::kDraw);
  EXPECT_EQ(outcome(rps, 1, 2), Outcome::kLoss);
  EXPECT_EQ(outcome(rps, 1, 3), Outcome::kWin);
  EXPECT_EQ(rps.resolve(Side::kRow, "P"), 2);
}

TEST(GameTest, ParsesSingleCell) {
  const auto g = parse_game("game one\nsymmetric true\nrows 1 cols 1\nrow 1: 0\n");
  EXPECT_TRUE(is_symmetric(g));
  EXPECT_EQ(outcome(g, 1, 1), Outcome::kDraw);
}

TEST(GameTest, ParsesDiceAndAliases) {
  const auto dice = bundled("dice");
  EXPECT_TRUE(dice.symmetric_flag());
  for (int i = 1; i <= 6; ++i) {
    for (int j = 1; j <= 6; ++j) EXPECT_EQ(to_int(outcome(dice, i, j)), (i > j) - (i < j));
  }
  EXPECT_EQ(outcome(dice, 6, 3), Outcome::kWin);

  const auto aliased = parse_game(
      "# comment\ngame ab  # trailing\nsymmetric false\nrows 1 cols 3\nrow 1: w d l\n");
  EXPECT_EQ(to_int(outcome(aliased, 1, 1)), 1);
  EXPECT_EQ(to_int(outcome(aliased, 1, 2)), 0);
  EXPECT_EQ(to_int(outcome(aliased, 1, 3)), -1);
}

TEST(GameTest, RejectsMalformedFiles) {
  const std::string head = "game g\nsymmetric false\nrows 2 cols 2\n";
  EXPECT_THROW(parse_game(head + "row 1: 0 0\nrow 2: 0\n"), ParseError);
  EXPECT_THROW(parse_game(head + "row 1: 0 0\nrow 2: 0 2\n"), ParseError);
  EXPECT_THROW(parse_game(head + "row 1: 0 0\n"), ParseError);
  EXPECT_THROW(parse_game(head + "row 1: 0 0\nrow 1: 0 0\n"), ParseError);
  EXPECT_THROW(parse_game(head + "row 1: 0 x\nrow 2: 0 0\n"), ParseError);
  EXPECT_THROW(parse_game("game g\nrows 1 cols 1\nrow 1: 0\n"), ParseError);
  EXPECT_THROW(parse_game("game g\nsymmetric false\nrows 0 cols 1\n"), ParseError);
  EXPECT_THROW(parse_game("game g\nsymmetric false\nrows 10001 cols 1\n"), ParseError);

  try {
    parse_game(head + "row 1: 0 0\nrow 2: 0 0 0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5);
  }
}

TEST(GameTest, DeclaredSymmetricMustBeAntisymmetric) {
  EXPECT_THROW(parse_game("game g\nsymmetric true\nrows 2 cols 2\nrow 1: 0 +1\nrow 2: +1 0\n"),
               InvariantError);
  EXPECT_THROW(parse_game("game g\nsymmetric true\nrows 1 cols 1\nrow 1: +1\n"), InvariantError);
  // The same entries are fine when not declared symmetric (first-mover games).
  EXPECT_NO_THROW(parse_game("game g\nsymmetric false\nrows 1 cols 1\nrow 1: +1\n"));
}

TEST(GameTest, OutcomeIsBoundsChecked) {
  const auto rps = bundled("rps");
  EXPECT_THROW(outcome(rps, 0, 1), IndexError);
  EXPECT_THROW(outcome(rps, 1, 4), IndexError);
}

TEST(GameTest, IsSymmetric) {
  EXPECT_TRUE(is_symmetric(bundled("rps")));
  EXPECT_FALSE(is_symmetric(GameTable::from_ints("g", {{1, 0}})));
  EXPECT_FALSE(is_symmetric(GameTable::from_ints("g", {{0, 1}, {1, 0}})));
}

TEST(GameTest, SymmetricTablesAreAntisymmetricEverywhere) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = testing::random_symmetric(rng, 1 + trial % 8);
    for (int i = 1; i <= g.rows(); ++i) {
      for (int j = 1; j <= g.cols(); ++j) {
        ASSERT_EQ(outcome(g, i, j), negate(outcome(g, j, i)));
      }
    }
  }
}

TEST(GameTest, CanonicalRoundTrip) {
  for (const char* name : {"rps", "dice", "rpsls", "well", "pennies", "firstmover", "single"}) {
    const auto g = bundled(name);
    const auto text = serialize_game(g);
    EXPECT_EQ(parse_game(text), g) << name;
    EXPECT_EQ(serialize_game(parse_game(text)), text) << name;
  }
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testing::random_table(rng, 1 + trial % 5, 1 + trial % 7);
    EXPECT_EQ(parse_game(serialize_game(g)), g);
  }
}

TEST(GameTest, CanonicalSpelling) {
  const auto g = parse_game("game g\nsymmetric   false\nrows 1   cols 2\nrow 1:   w l");
  EXPECT_EQ(serialize_game(g), "game g\nsymmetric false\nrows 1 cols 2\nrow 1: +1 -1\n");
}

// Independent oracle: count tables by building their text and deduplicating.
std::uint64_t count_by_text(int rows, int cols) {
  const int n = rows * cols;
  std::set<std::string> seen;
  std::uint64_t total = 1;
  for (int k = 0; k < n; ++k) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::string s;
    std::uint64_t c = code;
    for (int k = 0; k < n; ++k) {
      s += "-0+"[c % 3];
      c /= 3;
    }
    seen.insert(s);
  }
  return seen.size();
}

TEST(GameTest, EnumerateGameCount) {
  EXPECT_EQ(enumerate_game_count(1, 1), 3u);
  EXPECT_EQ(enumerate_game_count(1, 2), 9u);
  EXPECT_EQ(enumerate_game_count(2, 2), 81u);
  EXPECT_EQ(count_by_text(2, 2), 81u);
  for (int r = 1; r <= 3; ++r) {
    for (int c = 1; r * c <= 6; ++c) {
      EXPECT_EQ(enumerate_game_count(r, c), count_by_text(r, c));
      EXPECT_EQ(enumerate_game_count_serial(r, c), count_by_text(r, c));
    }
  }
  EXPECT_EQ(enumerate_game_count(3, 4), 531441u);
  EXPECT_EQ(enumerate_game_count(4, 4), game_count_closed_form(4, 4));
  EXPECT_EQ(game_count_closed_form(4, 4), 43046721u);
  EXPECT_EQ(game_count_closed_form(100, 100), UINT64_MAX);
}

TEST(GameTest, RoleSwapNegates) {
  const auto rps = bundled("rps");
  const auto swapped = rps.role_swapped();
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) EXPECT_EQ(outcome(swapped, i, j), negate(outcome(rps, i, j)));
  }
  EXPECT_TRUE(swapped.symmetric_flag());
}

}  // namespace
}  // namespace intransit
