#include <streamtable/greedy.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace streamtable;

namespace {

BoundaryChain chain(std::vector<Rational> xs) { return BoundaryChain{std::move(xs)}; }
std::vector<Rational> ones(std::size_t n) { return std::vector<Rational>(n, Rational(1)); }

}  // namespace

TEST(FirstColumn, LeftAligned) {
  Table t = validate_table({{2, 1}, {1, 1}});
  StreamPlacement s = layout_first_column(t, RowHeights::uniform(2, 1));
  EXPECT_EQ(s.lefts, (std::vector<Rational>{0, 0}));
  EXPECT_EQ(s.rights().xs, (std::vector<Rational>{2, 1}));
}

TEST(FirstColumn, WidthIsWeightOverHeight) {
  Table t = validate_table({{1, 1}, {1, 1}, {1, 1}});
  StreamPlacement s = layout_first_column(t, RowHeights({Rational(1, 2), 1, 2}));
  EXPECT_EQ(s.rights().xs, (std::vector<Rational>{2, 1, Rational(1, 2)}));
}

TEST(TopPass, Examples) {
  EXPECT_EQ(build_top_pass(chain({0, 0, 0}), ones(3)), (std::vector<Rational>{0, 0, 0}));
  EXPECT_EQ(build_top_pass(chain({0, 3, 0}), ones(3)), (std::vector<Rational>{0, 3, 2}));
  std::vector<Rational> w{1, 2, 1};
  EXPECT_EQ(build_top_pass(chain({2, 0, 0}), w), (std::vector<Rational>{2, 0, 0}));
}

TEST(BottomPass, Examples) {
  EXPECT_EQ(build_bottom_pass(chain({0, 0, 0}), ones(3)), (std::vector<Rational>{0, 0, 0}));
  EXPECT_EQ(build_bottom_pass(chain({0, 3, 0}), ones(3)), (std::vector<Rational>{2, 3, 0}));
}

TEST(MiddleStream, StraightBand) {
  StreamPlacement s = place_middle_stream(chain({4, 4, 4}), ones(3));
  EXPECT_EQ(s.lefts, (std::vector<Rational>{4, 4, 4}));
  for (auto p : s.provenance) EXPECT_EQ(p, Provenance::Root);
}

TEST(MiddleStream, MergeOfPasses) {
  StreamPlacement s = place_middle_stream(chain({0, 3, 0}), ones(3));
  EXPECT_EQ(s.lefts, (std::vector<Rational>{2, 3, 2}));
  EXPECT_EQ(s.left_sum(), 7);
  EXPECT_EQ(s.provenance, (std::vector<Provenance>{Provenance::ParentBelow, Provenance::Root, Provenance::ParentAbove}));
}

// Minimal left sum among all no-split placements on a fine grid.
TEST(MiddleStream, LeftSumMinimalOnGrid) {
  std::vector<Rational> prev{0, 3, 0};
  Rational best = -1;
  for (int a = 0; a <= 16; ++a) {
    for (int b = 12; b <= 16; ++b) {
      for (int c = 0; c <= 16; ++c) {
        Rational x[3] = {Rational(a) / 4, Rational(b) / 4, Rational(c) / 4};
        bool ok = true;
        for (int i = 0; i < 3; ++i) ok = ok && x[i] >= prev[i];
        for (int i = 0; i < 2; ++i) ok = ok && std::max(x[i], x[i + 1]) <= std::min(x[i] + 1, x[i + 1] + 1);
        if (!ok) continue;
        Rational sum = x[0] + x[1] + x[2];
        if (best < 0 || sum < best) best = sum;
      }
    }
  }
  EXPECT_EQ(best, 7);
}

TEST(LastStream, SingleRow) {
  StreamPlacement s = place_last_stream(chain({5}), {Rational(3)});
  EXPECT_EQ(s.rights().xs, (std::vector<Rational>{8}));
}

TEST(LastStream, TwoByTwo) {
  Table t = validate_table({{2, 1}, {1, 2}});
  RowHeights h = RowHeights::uniform(2, 1);
  StreamPlacement first = layout_first_column(t, h);
  StreamPlacement last = layout_last_column(first.rights(), t, h);
  EXPECT_EQ(last.lefts, (std::vector<Rational>{2, 1}));
  EXPECT_EQ(last.rights().xs, (std::vector<Rational>{3, 3}));
}

TEST(Greedy, TwoByTwoTilesBox) {
  Table t = validate_table({{2, 1}, {1, 2}});
  Layout l = greedy_layout(t, RowHeights::uniform(2, 1));
  EXPECT_EQ(l.box_width(), 3);
  EXPECT_EQ(excess_area(l), 0);
  EXPECT_TRUE(layout_violations(l).empty());
}

TEST(Greedy, SingleRowAbuts) {
  Table t = validate_table({{1, Rational(1, 2), 3, 2}});
  Layout l = greedy_layout(t, RowHeights::uniform(1, 2));
  EXPECT_EQ(excess_area(l), 0);
  for (std::size_t j = 1; j < 4; ++j) EXPECT_EQ(l.rect(0, j).left, l.rect(0, j - 1).right);
}

TEST(Greedy, MatchesOracleOnRandomTables) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = 1 + rng() % 4;
    std::size_t c = 2 + rng() % 3;
    Table t = testutil::random_table(rng, r, c);
    auto hs = testutil::random_heights(rng, r);
    auto perm = testutil::random_order(rng, r);
    Layout l = greedy_layout(t, RowHeights(hs), RowOrder(perm));
    ASSERT_TRUE(layout_violations(l).empty());
    ASSERT_EQ(split_count(l), 0u);
    ASSERT_EQ(excess_area(l), oracle::min_excess(t, hs, perm)) << "trial " << trial;
  }
}

TEST(Greedy, OrderIsRespected) {
  Table t = validate_table({{3, 1}, {1, 1}, {1, 3}});
  RowOrder order({2, 0, 1});
  Layout l = greedy_layout(t, RowHeights::uniform(3, 1), order);
  EXPECT_EQ(l.band_top(0), 0);
  EXPECT_EQ(l.band_top(1), 1);
  EXPECT_EQ(split_count(l), 0u);
  EXPECT_EQ(excess_area(l), oracle::min_excess(t, {1, 1, 1}, order.perm()));
}
