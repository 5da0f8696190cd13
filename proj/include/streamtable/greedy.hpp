#pragma once

#include <streamtable/layout.hpp>

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace streamtable {

/// One x-coordinate per drawn row band: the right boundary of a stream (or the
/// left boundary of the next one), top to bottom.
struct BoundaryChain {
  std::vector<Rational> xs;

  std::size_t size() const noexcept { return xs.size(); }
  const Rational& operator[](std::size_t i) const { return xs[i]; }
};

/// How a cell's left edge was determined: pinned by the previous stream
/// (Root), hanging off the cell above or below (its right edge equals the
/// parent's left edge), or shifted to the common right edge (last stream).
enum class Provenance { Root, ParentAbove, ParentBelow, RightAligned };

/// Placement of one stream, indexed by drawn position.
struct StreamPlacement {
  std::size_t col = 0;
  std::vector<Rational> lefts;
  std::vector<Rational> widths;
  std::vector<Provenance> provenance;

  BoundaryChain rights() const {
    BoundaryChain out;
    out.xs.reserve(lefts.size());
    for (std::size_t i = 0; i < lefts.size(); ++i) out.xs.push_back(lefts[i] + widths[i]);
    return out;
  }

  Rational left_sum() const {
    Rational sum = 0;
    for (const auto& x : lefts) sum += x;
    return sum;
  }
};

/// Widths w/h of column `col`, in drawn order.
inline std::vector<Rational> stream_widths(const Table& table, const RowHeights& heights, const RowOrder& order,
                                           std::size_t col) {
  std::vector<Rational> out;
  out.reserve(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) out.push_back(table.weight(order[p], col) / heights[order[p]]);
  return out;
}

/// Candidate lefts placed top to bottom: the first row starts at the previous
/// boundary, every later row as far left as possible while its interval still
/// touches the one above. Where the boundary pushes a row past that contact,
/// the row becomes a new root at the boundary.
inline std::vector<Rational> build_top_pass(const BoundaryChain& prev_right, std::span<const Rational> widths) {
  const std::size_t r = widths.size();
  std::vector<Rational> lefts(r);
  if (r == 0) return lefts;
  lefts[0] = prev_right[0];
  Rational hanging;
  for (std::size_t i = 1; i < r; ++i) {
    hanging = lefts[i - 1] - widths[i];
    lefts[i] = hanging > prev_right[i] ? hanging : prev_right[i];
  }
  return lefts;
}

/// Mirror of build_top_pass, placed bottom to top.
inline std::vector<Rational> build_bottom_pass(const BoundaryChain& prev_right, std::span<const Rational> widths) {
  const std::size_t r = widths.size();
  std::vector<Rational> lefts(r);
  if (r == 0) return lefts;
  lefts[r - 1] = prev_right[r - 1];
  Rational hanging;
  for (std::size_t i = r - 1; i-- > 0;) {
    hanging = lefts[i + 1] - widths[i];
    lefts[i] = hanging > prev_right[i] ? hanging : prev_right[i];
  }
  return lefts;
}

namespace detail {

inline std::vector<Provenance> classify(const BoundaryChain& prev_right, const std::vector<Rational>& lefts,
                                        std::span<const Rational> widths) {
  const std::size_t r = lefts.size();
  std::vector<Provenance> out(r);
  Rational right;
  for (std::size_t i = 0; i < r; ++i) {
    right = lefts[i] + widths[i];
    if (lefts[i] == prev_right[i]) {
      out[i] = Provenance::Root;
    } else if (i > 0 && right == lefts[i - 1]) {
      out[i] = Provenance::ParentAbove;
    } else if (i + 1 < r && right == lefts[i + 1]) {
      out[i] = Provenance::ParentBelow;
    } else {
      throw std::logic_error("greedy stream cell without root or parent");
    }
  }
  return out;
}

}  // namespace detail

/// Connected stream with the smallest sum of left edges subject to every left
/// edge lying at or right of `prev_right`: the pointwise maximum of the top and
/// bottom passes.
inline StreamPlacement place_middle_stream(const BoundaryChain& prev_right, std::vector<Rational> widths,
                                           std::size_t col = 0) {
  if (prev_right.size() != widths.size()) throw std::invalid_argument("boundary and width counts differ");
  std::vector<Rational> top = build_top_pass(prev_right, widths);
  std::vector<Rational> bottom = build_bottom_pass(prev_right, widths);
  StreamPlacement out;
  out.col = col;
  out.lefts.resize(widths.size());
  for (std::size_t i = 0; i < widths.size(); ++i) out.lefts[i] = top[i] > bottom[i] ? top[i] : bottom[i];
  out.provenance = detail::classify(prev_right, out.lefts, widths);
  out.widths = std::move(widths);
  return out;
}

/// Right-aligned last stream: the middle-stream placement shifted right until
/// all right edges meet at the smallest feasible common x.
inline StreamPlacement place_last_stream(const BoundaryChain& prev_right, std::vector<Rational> widths,
                                         std::size_t col = 0) {
  StreamPlacement out = place_middle_stream(prev_right, std::move(widths), col);
  Rational edge = out.lefts[0] + out.widths[0];
  Rational right;
  for (std::size_t i = 1; i < out.lefts.size(); ++i) {
    right = out.lefts[i] + out.widths[i];
    if (right > edge) edge = right;
  }
  for (std::size_t i = 0; i < out.lefts.size(); ++i) {
    out.lefts[i] = edge - out.widths[i];
    out.provenance[i] = out.lefts[i] == prev_right[i] ? Provenance::Root : Provenance::RightAligned;
  }
  return out;
}

/// Step 1: left-aligned first stream at x = 0.
inline StreamPlacement layout_first_column(const Table& table, const RowHeights& heights,
                                           const RowOrder& order) {
  StreamPlacement out;
  out.col = 0;
  out.widths = stream_widths(table, heights, order, 0);
  out.lefts.assign(table.rows(), Rational(0));
  out.provenance.assign(table.rows(), Provenance::Root);
  return out;
}

inline StreamPlacement layout_first_column(const Table& table, const RowHeights& heights) {
  return layout_first_column(table, heights, RowOrder::identity(table.rows()));
}

/// Step 2 for column `col` (1 <= col < c - 1).
inline StreamPlacement layout_middle_stream(const BoundaryChain& prev_right, std::size_t col, const Table& table,
                                            const RowHeights& heights, const RowOrder& order) {
  return place_middle_stream(prev_right, stream_widths(table, heights, order, col), col);
}

inline StreamPlacement layout_middle_stream(const BoundaryChain& prev_right, std::size_t col, const Table& table,
                                            const RowHeights& heights) {
  return layout_middle_stream(prev_right, col, table, heights, RowOrder::identity(table.rows()));
}

/// Step 3 for the last column.
inline StreamPlacement layout_last_column(const BoundaryChain& prev_right, const Table& table,
                                          const RowHeights& heights, const RowOrder& order) {
  return place_last_stream(prev_right, stream_widths(table, heights, order, table.cols() - 1), table.cols() - 1);
}

inline StreamPlacement layout_last_column(const BoundaryChain& prev_right, const Table& table,
                                          const RowHeights& heights) {
  return layout_last_column(prev_right, table, heights, RowOrder::identity(table.rows()));
}

/// No-split StreamTable with minimum excess area for fixed heights and a fixed
/// drawn row order. O(rc) rational operations.
inline Layout greedy_layout(std::shared_ptr<const Table> table, const RowHeights& heights, const RowOrder& order) {
  const Table& t = *table;
  if (heights.size() != t.rows()) throw std::invalid_argument("one height per row required");
  if (order.size() != t.rows()) throw std::invalid_argument("row order length differs from row count");
  const std::size_t r = t.rows();
  const std::size_t c = t.cols();

  Layout layout{table, heights, order, {}};
  layout.rects.resize(r * c);
  auto store = [&](const StreamPlacement& s) {
    for (std::size_t p = 0; p < r; ++p) {
      CellRect& rect = layout.rect(order[p], s.col);
      rect.row = order[p];
      rect.col = s.col;
      rect.left = s.lefts[p];
      rect.right = s.lefts[p] + s.widths[p];
    }
  };

  StreamPlacement stream = layout_first_column(t, heights, order);
  store(stream);
  for (std::size_t j = 1; j + 1 < c; ++j) {
    stream = layout_middle_stream(stream.rights(), j, t, heights, order);
    store(stream);
  }
  stream = layout_last_column(stream.rights(), t, heights, order);
  store(stream);

  if (split_count(layout) != 0) throw std::logic_error("greedy layout produced a split");
  return layout;
}

inline Layout greedy_layout(const Table& table, const RowHeights& heights, const RowOrder& order) {
  return greedy_layout(std::make_shared<const Table>(table), heights, order);
}

inline Layout greedy_layout(const Table& table, const RowHeights& heights) {
  return greedy_layout(table, heights, RowOrder::identity(table.rows()));
}

}  // namespace streamtable
