// Sanity checks of the test oracles themselves on hand-solved cases.
#include <gtest/gtest.h>

#include "oracles.hpp"

using streamtable::Rational;
using streamtable::validate_table;

TEST(RootOracle, HandSolvedCases) {
  // [[2,1],[1,2]] tiles a 3x2 box.
  EXPECT_EQ(oracle::min_excess(validate_table({{2, 1}, {1, 2}}), {1, 1}, {0, 1}), 0);
  // [[3,1],[1,1]]: the box is 4 wide, row 2 leaves a 2x1 gap.
  EXPECT_EQ(oracle::min_excess(validate_table({{3, 1}, {1, 1}}), {1, 1}, {0, 1}), 2);
  // Single row: cells abut.
  EXPECT_EQ(oracle::min_excess(validate_table({{1, 2, 3}}), {2}, {0}), 0);
  // First stream ends at [1,4,1]; the unit middle cells settle at [3,4,3],
  // so the last stream ends at 6.
  EXPECT_EQ(oracle::min_box_width(validate_table({{1, 1, 1}, {4, 1, 1}, {1, 1, 1}}), {1, 1, 1}, {0, 1, 2}), 6);
}

TEST(RootOracle, HeightsScaleWidths) {
  // Heights 1/2 double the widths.
  EXPECT_EQ(oracle::min_box_width(validate_table({{1, 1}}), {Rational(1, 2)}, {0}), 4);
}
