#include <streamtable/greedy.hpp>

#include <gtest/gtest.h>

using namespace streamtable;

namespace {

Layout manual(const Table& t, std::vector<Rational> heights, std::vector<std::size_t> order,
              std::vector<std::pair<Rational, Rational>> spans) {
  auto shared = std::make_shared<const Table>(t);
  Layout l{shared, RowHeights(std::move(heights)), RowOrder(std::move(order)), {}};
  for (std::size_t i = 0; i < t.rows(); ++i) {
    for (std::size_t j = 0; j < t.cols(); ++j) {
      const auto& s = spans[i * t.cols() + j];
      l.rects.push_back({i, j, s.first, s.second});
    }
  }
  return l;
}

}  // namespace

TEST(Excess, GapFreeRowIsZero) {
  Table t = validate_table({{2, 1}});
  Layout l = manual(t, {1}, {0}, {{0, 2}, {2, 3}});
  EXPECT_TRUE(layout_violations(l).empty());
  EXPECT_EQ(excess_area(l), 0);
  EXPECT_TRUE(empty_rectangles(l).empty());
}

TEST(Excess, BothRoutesAgreeOnGappedLayout) {
  Table t = validate_table({{3, 1}, {1, 1}});
  Layout l = manual(t, {1, 1}, {0, 1}, {{0, 3}, {3, 4}, {0, 1}, {3, 4}});
  EXPECT_EQ(excess_area_by_bbox(l), 2);
  EXPECT_EQ(excess_area_by_gaps(l), 2);
  auto gaps = empty_rectangles(l);
  ASSERT_EQ(gaps.size(), 1u);
  EXPECT_EQ(gaps[0].row, 1u);
  EXPECT_EQ(gaps[0].gap_after_col, 0u);
  EXPECT_EQ(gaps[0].area(), 2);
}

TEST(Excess, OverlapIsFlaggedAndNegative) {
  Table t = validate_table({{1, 1}});
  Layout l = manual(t, {1}, {0}, {{0, 1}, {Rational(1, 2), Rational(3, 2)}});
  EXPECT_FALSE(layout_violations(l).empty());
  EXPECT_EQ(excess_area(l), Rational(-1, 2));
  EXPECT_EQ(excess_area_by_gaps(l), Rational(-1, 2));
}

TEST(Splits, OneRowHasNone) {
  Table t = validate_table({{1, 1, 1}});
  Layout l = manual(t, {1}, {0}, {{0, 1}, {5, 6}, {6, 7}});
  EXPECT_EQ(split_count(l), 0u);
}

TEST(Splits, DisjointIntervalsCountTouchingDoesNot) {
  Table t = validate_table({{1, 2, 1}, {2, 1, 1}});
  // Column B: [1,3] above [2,3] overlaps; column A [0,1] vs [0,2] overlaps.
  Layout a = manual(t, {1, 1}, {0, 1}, {{0, 1}, {1, 3}, {3, 4}, {0, 2}, {2, 3}, {3, 4}});
  EXPECT_EQ(split_count(a), 0u);
  // Row 2 shifted so its B and C cells only touch the cells above.
  Layout b = manual(t, {1, 1}, {0, 1}, {{0, 1}, {1, 3}, {3, 4}, {0, 2}, {3, 4}, {4, 5}});
  EXPECT_EQ(split_count(b), 0u);
  Layout c = manual(t, {1, 1}, {0, 1},
                    {{0, 1}, {1, 3}, {3, 4}, {0, 2}, {Rational(7, 2), Rational(9, 2)}, {Rational(9, 2), Rational(11, 2)}});
  EXPECT_EQ(split_count(c), 2u);
  EXPECT_EQ(splits_between(c, 0), 2u);
}

TEST(Layout, ScaleAndTranslate) {
  Table t = validate_table({{2, 1}, {1, 2}});
  Layout g = greedy_layout(t, RowHeights::uniform(2, 1));
  Layout s = scale_layout(g, 3);
  EXPECT_EQ(excess_area(s), excess_area(g));
  EXPECT_EQ(s.rect(0, 0).right, Rational(2, 3));
  Layout m = translate_layout(g, 5);
  EXPECT_EQ(m.min_x(), 5);
  EXPECT_EQ(excess_area(m), excess_area(g));
  EXPECT_THROW(scale_layout(g, 0), Error);
}
