#pragma once

#include <streamtable/table.hpp>

#include <algorithm>
#include <cstddef>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace streamtable {

/// Rectangle of cell (row, col). The vertical extent is the row's band,
/// derived from the layout's order and heights.
struct CellRect {
  std::size_t row = 0;
  std::size_t col = 0;
  Rational left;
  Rational right;

  Rational width() const { return right - left; }
  bool operator==(const CellRect& other) const = default;
};

/// A StreamTable drawing. Rects are stored row-major by table row; the drawn
/// top-to-bottom order is `order`. y-coordinates are not stored: the top of
/// drawn band p is the sum of the heights of the bands above it.
struct Layout {
  std::shared_ptr<const Table> table;
  RowHeights heights;
  RowOrder order;
  std::vector<CellRect> rects;

  std::size_t rows() const { return table->rows(); }
  std::size_t cols() const { return table->cols(); }

  const CellRect& rect(std::size_t row, std::size_t col) const { return rects[row * cols() + col]; }
  CellRect& rect(std::size_t row, std::size_t col) { return rects[row * cols() + col]; }

  const Rational& height(std::size_t row) const { return heights[row]; }

  /// y of the top edge of drawn position `position` (y grows downwards).
  Rational band_top(std::size_t position) const {
    Rational y = 0;
    for (std::size_t p = 0; p < position; ++p) y += heights[order[p]];
    return y;
  }

  Rational total_height() const { return heights.total(); }

  Rational min_x() const {
    Rational x = rects.front().left;
    for (const auto& r : rects) {
      if (r.left < x) x = r.left;
    }
    return x;
  }

  Rational max_x() const {
    Rational x = rects.front().right;
    for (const auto& r : rects) {
      if (r.right > x) x = r.right;
    }
    return x;
  }

  Rational box_width() const { return max_x() - min_x(); }
};

/// How strictly cell areas are checked: Exact is property P2; AtLeast admits
/// over-covered cells (solutions of the geometric program).
enum class AreaRule { Exact, AtLeast };

/// Lists every violated layout invariant; an empty result means the layout is
/// a valid StreamTable.
inline std::vector<std::string> layout_violations(const Layout& layout, AreaRule rule = AreaRule::Exact) {
  std::vector<std::string> out;
  if (!layout.table) return {"layout has no table"};
  const Table& t = *layout.table;
  const std::size_t r = t.rows();
  const std::size_t c = t.cols();
  if (layout.heights.size() != r) out.push_back("height count differs from row count");
  if (layout.order.size() != r) out.push_back("row order length differs from row count");
  if (layout.rects.size() != r * c) out.push_back("expected one rectangle per cell");
  if (!out.empty()) return out;

  auto cell = [](std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const CellRect& rect = layout.rect(i, j);
      if (rect.row != i || rect.col != j) out.push_back("rect " + cell(i, j) + " carries wrong indices");
      if (rect.right <= rect.left) {
        out.push_back("rect " + cell(i, j) + " has non-positive width");
        continue;
      }
      Rational area = rect.width() * layout.height(i);
      bool ok = rule == AreaRule::Exact ? area == t.weight(i, j) : area >= t.weight(i, j);
      if (!ok) out.push_back("rect " + cell(i, j) + " has area " + to_string(area) + ", weight " + to_string(t.weight(i, j)));
      if (j > 0 && rect.left < layout.rect(i, j - 1).right) {
        out.push_back("rect " + cell(i, j) + " overlaps its left neighbour");
      }
    }
    if (layout.rect(i, 0).left != layout.rect(0, 0).left) out.push_back("left edges of the first stream are not aligned");
    if (layout.rect(i, c - 1).right != layout.rect(0, c - 1).right) {
      out.push_back("right edges of the last stream are not aligned");
    }
  }
  return out;
}

/// Excess area as bounding box minus total weight.
inline Rational excess_area_by_bbox(const Layout& layout) {
  return layout.box_width() * layout.total_height() - layout.table->total_weight();
}

/// Excess area as the sum of empty regions inside each row band (plus any
/// over-coverage of cells beyond their weights, which is zero under P2).
inline Rational excess_area_by_gaps(const Layout& layout) {
  const Table& t = *layout.table;
  const std::size_t c = t.cols();
  const Rational lo = layout.min_x();
  const Rational hi = layout.max_x();
  Rational total = 0;
  Rational row_gaps;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const Rational& h = layout.height(i);
    row_gaps = layout.rect(i, 0).left - lo;
    row_gaps += hi - layout.rect(i, c - 1).right;
    for (std::size_t k = 0; k + 1 < c; ++k) {
      row_gaps += layout.rect(i, k + 1).left;
      row_gaps -= layout.rect(i, k).right;
    }
    total += h * row_gaps;
    for (std::size_t k = 0; k < c; ++k) {
      total += layout.rect(i, k).width() * h;
      total -= t.weight(i, k);
    }
  }
  return total;
}

/// Excess area of the layout. Negative when cells of a row overlap.
inline Rational excess_area(const Layout& layout) { return excess_area_by_bbox(layout); }

/// Number of splits between drawn positions p and p+1. Touching intervals
/// count as adjacent.
inline std::size_t splits_between(const Layout& layout, std::size_t position) {
  const std::size_t upper = layout.order[position];
  const std::size_t lower = layout.order[position + 1];
  std::size_t splits = 0;
  for (std::size_t j = 0; j < layout.cols(); ++j) {
    const CellRect& a = layout.rect(upper, j);
    const CellRect& b = layout.rect(lower, j);
    const Rational& lo = a.left > b.left ? a.left : b.left;
    const Rational& hi = a.right < b.right ? a.right : b.right;
    if (lo > hi) ++splits;
  }
  return splits;
}

inline std::size_t split_count(const Layout& layout) {
  std::size_t total = 0;
  for (std::size_t p = 0; p + 1 < layout.rows(); ++p) total += splits_between(layout, p);
  return total;
}

/// A maximal empty region inside one row band.
struct EmptyRect {
  static constexpr std::size_t kLeftBoundary = std::numeric_limits<std::size_t>::max();

  std::size_t row = 0;
  /// Gap lies between columns gap_after_col and gap_after_col + 1. The last
  /// column index denotes a gap against the right boundary; kLeftBoundary one
  /// against the left boundary.
  std::size_t gap_after_col = 0;
  Rational left;
  Rational right;
  Rational height;

  Rational width() const { return right - left; }
  Rational area() const { return (right - left) * height; }
  bool operator==(const EmptyRect& other) const = default;
};

/// All nonzero gaps, largest area first; ties by (row, col).
inline std::vector<EmptyRect> empty_rectangles(const Layout& layout) {
  std::vector<EmptyRect> out;
  const std::size_t c = layout.cols();
  const Rational lo = layout.min_x();
  const Rational hi = layout.max_x();
  for (std::size_t i = 0; i < layout.rows(); ++i) {
    const Rational& h = layout.height(i);
    if (layout.rect(i, 0).left > lo) out.push_back({i, EmptyRect::kLeftBoundary, lo, layout.rect(i, 0).left, h});
    for (std::size_t k = 0; k + 1 < c; ++k) {
      const Rational& a = layout.rect(i, k).right;
      const Rational& b = layout.rect(i, k + 1).left;
      if (b > a) out.push_back({i, k, a, b, h});
    }
    if (layout.rect(i, c - 1).right < hi) out.push_back({i, c - 1, layout.rect(i, c - 1).right, hi, h});
  }
  std::stable_sort(out.begin(), out.end(), [](const EmptyRect& x, const EmptyRect& y) {
    Rational ax = x.area();
    Rational ay = y.area();
    if (ax != ay) return ax > ay;
    if (x.row != y.row) return x.row < y.row;
    return x.gap_after_col < y.gap_after_col;
  });
  return out;
}

/// Multiplies every height by delta and every x-coordinate by 1/delta.
inline Layout scale_layout(const Layout& layout, const Rational& delta) {
  if (delta <= 0) throw Error(ErrorKind::NonPositiveParameter, "scale factor must be positive");
  std::vector<Rational> hs;
  hs.reserve(layout.rows());
  for (const auto& h : layout.heights.values()) hs.push_back(h * delta);
  Layout out{layout.table, RowHeights(std::move(hs)), layout.order, layout.rects};
  for (auto& r : out.rects) {
    r.left /= delta;
    r.right /= delta;
  }
  return out;
}

/// Shifts the whole drawing horizontally.
inline Layout translate_layout(const Layout& layout, const Rational& dx) {
  Layout out = layout;
  for (auto& r : out.rects) {
    r.left += dx;
    r.right += dx;
  }
  return out;
}

}  // namespace streamtable
