#pragma once

#include <streamtable/greedy.hpp>
#include <streamtable/order_search.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace streamtable {

/// Betweenness instance: ordered triples (left, centre, right) over a set of
/// integer elements. Rows of the generated table follow the sorted elements.
struct BetweennessInstance {
  std::vector<long long> elements;
  std::vector<std::array<long long, 3>> triples;

  std::size_t index_of(long long element) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), element);
    if (it == elements.end() || *it != element) {
      throw Error(ErrorKind::InvalidTriples, "unknown element " + std::to_string(element));
    }
    return static_cast<std::size_t>(it - elements.begin());
  }
};

/// Validates triples and derives the element set (the union of the triples
/// plus any extra `elements` given).
inline BetweennessInstance make_betweenness_instance(std::vector<std::array<long long, 3>> triples,
                                                     std::vector<long long> elements = {}) {
  std::set<long long> set(elements.begin(), elements.end());
  if (set.size() != elements.size()) throw Error(ErrorKind::InvalidTriples, "duplicate elements");
  for (const auto& t : triples) {
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw Error(ErrorKind::InvalidTriples, "triple elements must be distinct");
    }
    set.insert(t.begin(), t.end());
  }
  return BetweennessInstance{std::vector<long long>(set.begin(), set.end()), std::move(triples)};
}

/// Simple cubic graph. Vertex i is table row i.
struct CubicGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  bool adjacent(std::size_t u, std::size_t v) const {
    for (const auto& [a, b] : edges) {
      if ((a == u && b == v) || (a == v && b == u)) return true;
    }
    return false;
  }
};

inline CubicGraph make_cubic_graph(std::vector<std::string> vertices,
                                   std::vector<std::pair<std::size_t, std::size_t>> edges) {
  const std::size_t n = vertices.size();
  std::vector<int> degree(n, 0);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw Error(ErrorKind::NotCubic, "edge endpoint out of range");
    if (u == v) throw Error(ErrorKind::NotCubic, "self-loop at " + vertices[u]);
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      throw Error(ErrorKind::NotCubic, "parallel edge " + vertices[u] + "-" + vertices[v]);
    }
    ++degree[u];
    ++degree[v];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (degree[i] != 3) {
      throw Error(ErrorKind::NotCubic, "vertex " + vertices[i] + " has degree " + std::to_string(degree[i]));
    }
  }
  if (n == 0) throw Error(ErrorKind::NotCubic, "graph has no vertices");
  return CubicGraph{std::move(vertices), std::move(edges)};
}

enum class ReductionKind { Betweenness, HamPath };

struct ReductionInstance {
  Table table;
  ReductionKind kind = ReductionKind::Betweenness;
  std::variant<BetweennessInstance, CubicGraph> source;
  /// Excess-area bound rcw/12 (Betweenness) or split bound 4(n-1) (HamPath).
  Rational threshold;
  Rational delta = 1;
  Rational w;
};

/// Table with r rows and 4c+1 columns: a line column, then for each triple
/// three sub-columns followed by another line column. Line cells weigh
/// 1/(r(c+1)); the three sub-cells of a triple split w by the row's role.
inline ReductionInstance betweenness_to_table(const BetweennessInstance& inst, const Rational& w = 15) {
  const std::size_t r = inst.elements.size();
  const std::size_t c = inst.triples.size();
  if (r < 5 || c < 5) throw Error(ErrorKind::InvalidTriples, "the reduction needs at least 5 elements and 5 triples");
  if (w < 15) throw Error(ErrorKind::WTooSmall, "w must be at least 15");
  for (const auto& t : inst.triples) {
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw Error(ErrorKind::InvalidTriples, "triple elements must be distinct");
    }
    for (long long e : t) inst.index_of(e);
  }

  const Rational eps(1, static_cast<unsigned long>(r * (c + 1)));
  const Rational big = 2 * w / 3;
  const Rational small = w / 6;
  const Rational side = 5 * w / 12;

  std::vector<std::vector<Rational>> grid(r);
  std::vector<std::string> col_labels{"line0"};
  for (std::size_t k = 0; k < c; ++k) {
    const auto& t = inst.triples[k];
    std::string name = "t" + std::to_string(k + 1) + "(" + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " +
                       std::to_string(t[2]) + ")";
    col_labels.push_back(name + ".left");
    col_labels.push_back(name + ".mid");
    col_labels.push_back(name + ".right");
    col_labels.push_back("line" + std::to_string(k + 1));
  }
  for (std::size_t i = 0; i < r; ++i) {
    const long long e = inst.elements[i];
    grid[i].push_back(eps);
    for (const auto& t : inst.triples) {
      if (e == t[0]) {
        grid[i].insert(grid[i].end(), {big, small, small});
      } else if (e == t[2]) {
        grid[i].insert(grid[i].end(), {small, small, big});
      } else if (e == t[1]) {
        grid[i].insert(grid[i].end(), {small, big, small});
      } else {
        grid[i].insert(grid[i].end(), {side, small, side});
      }
      grid[i].push_back(eps);
    }
  }
  std::vector<std::string> row_labels;
  for (long long e : inst.elements) row_labels.push_back(std::to_string(e));

  ReductionInstance out;
  out.table = validate_table(std::move(grid), std::move(row_labels), std::move(col_labels));
  out.kind = ReductionKind::Betweenness;
  out.source = inst;
  out.threshold = Rational(static_cast<unsigned long>(r * c)) * w / 12;
  out.delta = 1;
  out.w = w;
  return out;
}

/// Table with n rows and three sub-columns per edge. A row whose vertex is an
/// endpoint of the edge gets (7w/12, w/12, 4w/12), any other row the mirror.
inline ReductionInstance hampath_to_table(const CubicGraph& graph, const Rational& w = 12) {
  if (w <= 0) throw Error(ErrorKind::NonPositiveParameter, "w must be positive");
  const CubicGraph g = make_cubic_graph(graph.vertices, graph.edges);
  const std::size_t n = g.vertices.size();
  const Rational wide = 7 * w / 12;
  const Rational thin = w / 12;
  const Rational mid = 4 * w / 12;

  std::vector<std::vector<Rational>> grid(n);
  std::vector<std::string> col_labels;
  for (const auto& [u, v] : g.edges) {
    std::string name = g.vertices[u] + "-" + g.vertices[v];
    col_labels.push_back(name + ".left");
    col_labels.push_back(name + ".mid");
    col_labels.push_back(name + ".right");
    for (std::size_t i = 0; i < n; ++i) {
      if (i == u || i == v) {
        grid[i].insert(grid[i].end(), {wide, thin, mid});
      } else {
        grid[i].insert(grid[i].end(), {mid, thin, wide});
      }
    }
  }

  ReductionInstance out;
  out.table = validate_table(std::move(grid), g.vertices, std::move(col_labels));
  out.kind = ReductionKind::HamPath;
  out.source = g;
  out.threshold = Rational(static_cast<unsigned long>(4 * (n - 1)));
  out.delta = 1;
  out.w = w;
  return out;
}

/// True iff every triple's centre lies strictly between its outer elements.
/// The order lists row indices (positions in the sorted element list).
inline bool check_betweenness_certificate(const BetweennessInstance& inst, const RowOrder& order) {
  if (order.size() != inst.elements.size()) throw Error(ErrorKind::InvalidOrder, "order must cover every element");
  const std::vector<std::size_t> pos = order.positions();
  for (const auto& t : inst.triples) {
    std::size_t a = pos[inst.index_of(t[0])];
    std::size_t b = pos[inst.index_of(t[1])];
    std::size_t c = pos[inst.index_of(t[2])];
    if (!((a < b && b < c) || (c < b && b < a))) return false;
  }
  return true;
}

/// Maps element values to a row order, e.g. sigma = (3,1,4,2,5).
inline RowOrder order_from_elements(const BetweennessInstance& inst, const std::vector<long long>& sequence) {
  std::vector<std::size_t> perm;
  for (long long e : sequence) perm.push_back(inst.index_of(e));
  return RowOrder(std::move(perm));
}

/// True iff consecutive vertices of the order are adjacent.
inline bool check_hampath_certificate(const CubicGraph& graph, const RowOrder& order) {
  if (order.size() != graph.vertices.size()) throw Error(ErrorKind::InvalidOrder, "order must cover every vertex");
  for (std::size_t p = 0; p + 1 < order.size(); ++p) {
    if (!graph.adjacent(order[p], order[p + 1])) return false;
  }
  return true;
}

namespace detail {

/// Draws the betweenness certificate: line columns stacked vertically, each
/// triple confined to a band of width w + w/12 whose three streams are placed
/// greedily inside it.
inline Layout betweenness_certificate_layout(const ReductionInstance& inst, const RowOrder& order) {
  auto table = std::make_shared<const Table>(inst.table);
  const Table& t = *table;
  const std::size_t r = t.rows();
  const std::size_t triples = (t.cols() - 1) / 4;
  const RowHeights heights = RowHeights::uniform(r, inst.delta);
  const Rational band = inst.w + inst.w / 12;

  Layout layout{table, heights, order, std::vector<CellRect>(r * t.cols())};
  auto store = [&](std::size_t col, const std::vector<Rational>& lefts, const std::vector<Rational>& widths) {
    for (std::size_t p = 0; p < r; ++p) {
      CellRect& rect = layout.rect(order[p], col);
      rect = {order[p], col, lefts[p], lefts[p] + widths[p]};
    }
  };
  auto constant = [&](const Rational& x) { return BoundaryChain{std::vector<Rational>(r, x)}; };

  Rational cursor = 0;
  for (std::size_t k = 0; k <= triples; ++k) {
    const std::size_t line = 4 * k;
    std::vector<Rational> widths = stream_widths(t, heights, order, line);
    store(line, std::vector<Rational>(r, cursor), widths);
    cursor += widths.front();
    if (k == triples) break;

    const Rational band_end = cursor + band;
    StreamPlacement left = place_middle_stream(constant(cursor), stream_widths(t, heights, order, line + 1), line + 1);
    store(line + 1, left.lefts, left.widths);
    StreamPlacement middle = place_middle_stream(left.rights(), stream_widths(t, heights, order, line + 2), line + 2);
    store(line + 2, middle.lefts, middle.widths);
    StreamPlacement right = place_last_stream(middle.rights(), stream_widths(t, heights, order, line + 3), line + 3);
    if (right.lefts.front() + right.widths.front() > band_end) {
      throw Error(ErrorKind::CertificateInvalid, "triple " + std::to_string(k + 1) + " does not fit its band");
    }
    for (std::size_t p = 0; p < r; ++p) right.lefts[p] = band_end - right.widths[p];
    store(line + 3, right.lefts, right.widths);
    cursor = band_end;
  }
  if (split_count(layout) != 0) throw Error(ErrorKind::CertificateInvalid, "certificate layout has a split");
  return layout;
}

}  // namespace detail

/// Layout witnessing the reduction's threshold for a valid certificate order:
/// at most rcw/12 excess and no split (Betweenness) or a zero-excess packed
/// layout with exactly 4(n-1) splits (HamPath).
inline Layout certificate_layout(const ReductionInstance& inst, const RowOrder& order) {
  if (inst.kind == ReductionKind::Betweenness) {
    const auto& src = std::get<BetweennessInstance>(inst.source);
    if (!check_betweenness_certificate(src, order)) {
      throw Error(ErrorKind::CertificateInvalid, "order violates a betweenness triple");
    }
    return detail::betweenness_certificate_layout(inst, order);
  }
  const auto& g = std::get<CubicGraph>(inst.source);
  if (!check_hampath_certificate(g, order)) {
    throw Error(ErrorKind::CertificateInvalid, "order is not a Hamiltonian path");
  }
  return packed_layout(inst.table, order, inst.delta);
}

}  // namespace streamtable
