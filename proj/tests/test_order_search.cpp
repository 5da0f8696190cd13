#include <streamtable/order_search.hpp>
#include <streamtable/reductions.hpp>

#include <gtest/gtest.h>

#include <algorithm>

#include "test_util.hpp"

using namespace streamtable;

TEST(Packed, RowsAbutAndSumsMustMatch) {
  Table t = validate_table({{1, 2}, {2, 1}});
  Layout l = packed_layout(t, RowOrder::identity(2), 1);
  EXPECT_EQ(excess_area(l), 0);
  EXPECT_EQ(split_count(l), 0u);
  Table uneven = validate_table({{1, 2}, {2, 2}});
  try {
    packed_layout(uneven, RowOrder::identity(2), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnequalRowSums);
  }
}

TEST(Packed, SingleRow) {
  Table t = validate_table({{1, 2, 3}});
  EXPECT_EQ(split_count(packed_layout(t, RowOrder::identity(1), 1)), 0u);
}

TEST(Evaluate, TightTableHasNoExcess) {
  Table t = validate_table({{2, 1}, {1, 2}});
  EXPECT_EQ(evaluate_order(t, RowOrder::identity(2), 1, Objective::MinExcessNoSplit), 0);
}

TEST(BruteForce, SingleRow) {
  Table t = validate_table({{2, 1}});
  SearchResult res = brute_force_search(t, 1, Objective::MinExcessNoSplit);
  EXPECT_EQ(res.best_order, RowOrder::identity(1));
  EXPECT_EQ(res.score, 0);
  EXPECT_TRUE(res.optimal);
  EXPECT_EQ(res.evaluations, 1u);
}

TEST(BruteForce, MatchesNaiveEnumeration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t r = 2 + rng() % 3, c = 2 + rng() % 3;
    Table t = testutil::random_table(rng, r, c);
    SearchResult res = brute_force_search(t, 1, Objective::MinExcessNoSplit, {9, false, 3});
    std::vector<std::size_t> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<Rational> best;
    std::vector<std::size_t> arg;
    do {
      Rational s = excess_area(greedy_layout(t, RowHeights::uniform(r, 1), RowOrder(perm)));
      if (!best || s < *best) {
        best = s;
        arg = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_EQ(res.score, *best);
    EXPECT_EQ(res.best_order.perm(), arg);
  }
}

TEST(BruteForce, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 rng(9);
  Table t = testutil::random_table(rng, 6, 3);
  SearchResult one = brute_force_search(t, 1, Objective::MinExcessNoSplit, {9, false, 1});
  SearchResult four = brute_force_search(t, 1, Objective::MinExcessNoSplit, {9, false, 4});
  SearchResult sym = brute_force_search(t, 1, Objective::MinExcessNoSplit, {9, true, 2});
  EXPECT_EQ(one.best_order, four.best_order);
  EXPECT_EQ(one.score, four.score);
  EXPECT_EQ(one.evaluations, 720u);
  EXPECT_EQ(sym.score, one.score);
  EXPECT_EQ(sym.best_order, one.best_order);
  EXPECT_EQ(sym.evaluations, 360u);
}

TEST(BruteForce, CapEnforced) {
  std::mt19937_64 rng(1);
  Table t = testutil::random_table(rng, 10, 2);
  try {
    brute_force_search(t, 1, Objective::MinExcessNoSplit);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooManyRows);
  }
}

TEST(Anneal, ZeroStepsReturnsIdentity) {
  std::mt19937_64 rng(2);
  Table t = testutil::random_table(rng, 4, 3);
  AnnealSchedule s;
  s.steps = 0;
  SearchResult res = anneal_search(t, 1, Objective::MinExcessNoSplit, 1, s);
  EXPECT_EQ(res.best_order, RowOrder::identity(4));
  EXPECT_EQ(res.score, evaluate_order(t, RowOrder::identity(4), 1, Objective::MinExcessNoSplit));
  EXPECT_FALSE(res.optimal);
}

TEST(Anneal, DeterministicPerSeed) {
  std::mt19937_64 rng(4);
  Table t = testutil::random_table(rng, 6, 3);
  AnnealSchedule s;
  s.steps = 500;
  SearchResult a = anneal_search(t, 1, Objective::MinExcessNoSplit, 42, s);
  SearchResult b = anneal_search(t, 1, Objective::MinExcessNoSplit, 42, s);
  EXPECT_EQ(a.best_order, b.best_order);
  EXPECT_EQ(a.score, b.score);
  SearchResult opt = brute_force_search(t, 1, Objective::MinExcessNoSplit);
  EXPECT_GE(a.score, opt.score);
}

TEST(Anneal, FindsHamPathOptimum) {
  CubicGraph k33 = make_cubic_graph({"a", "b", "c", "d", "e", "f"},
                                    {{0, 1}, {0, 3}, {0, 5}, {2, 1}, {2, 3}, {2, 5}, {4, 1}, {4, 3}, {4, 5}});
  ReductionInstance inst = hampath_to_table(k33);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SearchResult res = anneal_search(inst.table, 1, Objective::MinSplitsZeroExcess, seed);
    EXPECT_EQ(res.score, 20) << "seed " << seed;
  }
}
