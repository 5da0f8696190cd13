#include <streamtable/order_search.hpp>
#include <streamtable/reductions.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace streamtable;

namespace {

BetweennessInstance five_triples() {
  return make_betweenness_instance({{2, 1, 3}, {3, 4, 5}, {1, 4, 5}, {2, 4, 1}, {5, 2, 3}});
}

CubicGraph k33() {
  return make_cubic_graph({"a", "b", "c", "d", "e", "f"},
                          {{0, 1}, {0, 3}, {0, 5}, {2, 1}, {2, 3}, {2, 5}, {4, 1}, {4, 3}, {4, 5}});
}

CubicGraph k4() { return make_cubic_graph({"1", "2", "3", "4"}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

}  // namespace

TEST(Betweenness, FiveTripleTable) {
  ReductionInstance inst = betweenness_to_table(five_triples(), 15);
  EXPECT_EQ(inst.table.rows(), 5u);
  EXPECT_EQ(inst.table.cols(), 21u);
  EXPECT_EQ(inst.threshold, Rational(125, 4));
  EXPECT_EQ(inst.table.weight(0, 0), Rational(1, 30));
  // Element 1 is the centre of (2,1,3).
  EXPECT_EQ(inst.table.weight(0, 1), Rational(5, 2));
  EXPECT_EQ(inst.table.weight(0, 2), 10);
  EXPECT_EQ(inst.table.weight(0, 3), Rational(5, 2));
  // Element 1 is not in (3,4,5).
  EXPECT_EQ(inst.table.weight(0, 5), Rational(25, 4));
  EXPECT_EQ(inst.table.weight(0, 6), Rational(5, 2));
  EXPECT_EQ(inst.table.weight(0, 7), Rational(25, 4));
  // Every row sums to the same total.
  for (std::size_t i = 1; i < 5; ++i) EXPECT_EQ(inst.table.row_sum(i), inst.table.row_sum(0));
}

TEST(Betweenness, PreconditionsChecked) {
  auto small = make_betweenness_instance({{1, 2, 3}});
  try {
    betweenness_to_table(small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidTriples);
  }
  try {
    betweenness_to_table(five_triples(), 14);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WTooSmall);
  }
  EXPECT_THROW(make_betweenness_instance({{1, 1, 2}}), Error);
}

TEST(Betweenness, Certificates) {
  auto inst = five_triples();
  EXPECT_TRUE(check_betweenness_certificate(inst, order_from_elements(inst, {3, 1, 4, 2, 5})));
  auto one = make_betweenness_instance({{1, 2, 3}});
  EXPECT_FALSE(check_betweenness_certificate(one, order_from_elements(one, {2, 1, 3})));
  EXPECT_TRUE(check_betweenness_certificate(one, order_from_elements(one, {1, 2, 3})));
  EXPECT_TRUE(check_betweenness_certificate(one, order_from_elements(one, {3, 2, 1})));
}

TEST(Betweenness, CertificateLayoutWithinThreshold) {
  auto src = five_triples();
  ReductionInstance inst = betweenness_to_table(src, 15);
  RowOrder sigma = order_from_elements(src, {3, 1, 4, 2, 5});
  Layout l = certificate_layout(inst, sigma);
  EXPECT_TRUE(layout_violations(l).empty());
  EXPECT_EQ(split_count(l), 0u);
  EXPECT_LE(excess_area(l), inst.threshold);
  // Greedy is optimal for the order, so it does at least as well.
  EXPECT_LE(evaluate_order(inst.table, sigma, 1, Objective::MinExcessNoSplit), excess_area(l));
}

TEST(Betweenness, InvalidCertificateRejected) {
  auto src = five_triples();
  ReductionInstance inst = betweenness_to_table(src, 15);
  try {
    certificate_layout(inst, RowOrder::identity(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CertificateInvalid);
  }
}

TEST(HamPath, K33Table) {
  ReductionInstance inst = hampath_to_table(k33());
  EXPECT_EQ(inst.table.rows(), 6u);
  EXPECT_EQ(inst.table.cols(), 27u);
  EXPECT_EQ(inst.threshold, 20);
  // a is an endpoint of the first edge a-b.
  EXPECT_EQ(inst.table.weight(0, 0), 7);
  EXPECT_EQ(inst.table.weight(0, 1), 1);
  EXPECT_EQ(inst.table.weight(0, 2), 4);
  EXPECT_EQ(inst.table.weight(2, 0), 4);
  EXPECT_EQ(inst.table.weight(2, 2), 7);
}

TEST(HamPath, K4Table) {
  ReductionInstance inst = hampath_to_table(k4());
  EXPECT_EQ(inst.table.rows(), 4u);
  EXPECT_EQ(inst.table.cols(), 18u);
  EXPECT_EQ(inst.threshold, 12);
}

TEST(HamPath, NonCubicRejected) {
  try {
    make_cubic_graph({"a", "b", "c"}, {{0, 1}, {1, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCubic);
  }
}

TEST(HamPath, Certificates) {
  EXPECT_TRUE(check_hampath_certificate(k33(), RowOrder::identity(6)));
  EXPECT_FALSE(check_hampath_certificate(k33(), RowOrder({0, 2, 1, 3, 4, 5})));
  std::vector<std::size_t> perm{0, 1, 2, 3};
  do {
    EXPECT_TRUE(check_hampath_certificate(k4(), RowOrder(perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_THROW(check_hampath_certificate(k4(), RowOrder({0, 0, 1, 2})), Error);
}

TEST(HamPath, CertificateLayoutSplits) {
  ReductionInstance inst = hampath_to_table(k33());
  Layout l = certificate_layout(inst, RowOrder::identity(6));
  EXPECT_EQ(excess_area(l), 0);
  EXPECT_EQ(split_count(l), 20u);
  for (std::size_t p = 0; p + 1 < 6; ++p) EXPECT_EQ(splits_between(l, p), 4u);
  Layout bad = packed_layout(inst.table, RowOrder({0, 2, 1, 3, 4, 5}), 1);
  EXPECT_GE(splits_between(bad, 0), 6u);
}

TEST(Oracles, HamiltonianPaths) {
  std::vector<std::vector<bool>> adj(8, std::vector<bool>(8, false));
  for (int base : {0, 4}) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) adj[base + i][base + j] = i != j;
    }
  }
  EXPECT_FALSE(oracle::has_hamiltonian_path(adj));
  std::vector<std::vector<bool>> k4adj(4, std::vector<bool>(4, true));
  for (int i = 0; i < 4; ++i) k4adj[i][i] = false;
  EXPECT_TRUE(oracle::has_hamiltonian_path(k4adj));
}

TEST(Oracles, Betweenness) {
  EXPECT_TRUE(oracle::betweenness_satisfiable({{1, 0, 2}, {2, 3, 4}, {0, 3, 4}, {1, 3, 0}, {4, 1, 2}}, 5));
  // (0,1,2) and (1,0,2) cannot both hold.
  EXPECT_FALSE(oracle::betweenness_satisfiable({{0, 1, 2}, {1, 0, 2}}, 3));
}
