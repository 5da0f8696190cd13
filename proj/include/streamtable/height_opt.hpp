#pragma once

#include <streamtable/greedy.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace streamtable {

struct UniformHeights {
  Rational delta;
};
struct ProportionalToRowSum {
  Rational total;
};
struct ExplicitHeights {
  std::vector<Rational> heights;
};
using HeightPolicy = std::variant<UniformHeights, ProportionalToRowSum, ExplicitHeights>;

inline RowHeights initial_heights(const Table& table, const HeightPolicy& policy) {
  if (const auto* u = std::get_if<UniformHeights>(&policy)) {
    if (u->delta <= 0) throw Error(ErrorKind::NonPositiveParameter, "uniform height must be positive");
    return RowHeights::uniform(table.rows(), u->delta);
  }
  if (const auto* p = std::get_if<ProportionalToRowSum>(&policy)) {
    if (p->total <= 0) throw Error(ErrorKind::NonPositiveParameter, "total height must be positive");
    Rational grand = table.total_weight();
    std::vector<Rational> hs;
    hs.reserve(table.rows());
    for (std::size_t i = 0; i < table.rows(); ++i) hs.push_back(p->total * table.row_sum(i) / grand);
    return RowHeights(std::move(hs));
  }
  const auto& e = std::get<ExplicitHeights>(policy);
  if (e.heights.size() != table.rows()) {
    throw Error(ErrorKind::NonPositiveParameter, "expected " + std::to_string(table.rows()) + " explicit heights");
  }
  for (const auto& h : e.heights) {
    if (h <= 0) throw Error(ErrorKind::NonPositiveParameter, "explicit heights must be positive");
  }
  return RowHeights(e.heights);
}

enum class Side { Left, Right };

/// Width of a prefix (left side) or suffix (right side) of the target row as
/// a function of the row height, f(width) = area / width. The prefix grows
/// rightwards from the left edge of the drawing; the suffix grows leftwards
/// from the right edge.
struct Hyperbola {
  Side side = Side::Left;
  /// Column of the cell whose edge the prefix/suffix ends at.
  std::size_t col = 0;
  /// True when the edge belongs to an empty rectangle rather than a cell.
  bool gap = false;
  Rational area;
  Rational min_width;
  /// Widest the prefix/suffix may become before a neighbouring row's stream
  /// would split; absent when the row has no neighbours.
  std::optional<Rational> max_width;

  Rational height_at(const Rational& width) const { return area / width; }

  /// Lowest row height at which this function is still valid.
  Rational min_height() const { return max_width ? Rational(area / *max_width) : Rational(0); }
};

struct ShrinkCandidate {
  EmptyRect target;
  std::vector<Hyperbola> hyperbolas;
  Rational current_height;
  Rational row_width;
  /// Common validity interval is [valid_from, current_height].
  Rational valid_from;
  std::optional<Rational> new_height;
};

/// Analyses whether the gap `target` can be closed by lowering its row while
/// keeping every other row fixed and every cell's area unchanged.
inline ShrinkCandidate shrink_candidate(const Layout& layout, const EmptyRect& target) {
  const std::size_t i = target.row;
  const std::size_t c = layout.cols();
  const Rational x0 = layout.min_x();
  const Rational x1 = layout.max_x();
  const Rational& hc = layout.height(i);

  ShrinkCandidate cand;
  cand.target = target;
  cand.current_height = hc;
  cand.row_width = x1 - x0;
  cand.valid_from = 0;

  if (target.gap_after_col == EmptyRect::kLeftBoundary || target.gap_after_col + 1 >= c) return cand;
  const std::size_t j = target.gap_after_col;

  std::vector<std::size_t> neighbours;
  const std::size_t pos = layout.order.positions()[i];
  if (pos > 0) neighbours.push_back(layout.order[pos - 1]);
  if (pos + 1 < layout.rows()) neighbours.push_back(layout.order[pos + 1]);

  // Rightmost x a prefix may reach without cutting column `col` loose from the
  // neighbouring rows.
  auto prefix_cap = [&](std::size_t col) -> std::optional<Rational> {
    std::optional<Rational> cap;
    for (std::size_t n : neighbours) {
      Rational x = layout.rect(n, col).right - x0;
      if (!cap || x < *cap) cap = x;
    }
    return cap;
  };
  auto suffix_cap = [&](std::size_t col) -> std::optional<Rational> {
    std::optional<Rational> cap;
    for (std::size_t n : neighbours) {
      Rational x = x1 - layout.rect(n, col).left;
      if (!cap || x < *cap) cap = x;
    }
    return cap;
  };
  auto add = [&](Side side, std::size_t col, bool gap, Rational width, std::optional<Rational> cap) {
    Hyperbola h;
    h.side = side;
    h.col = col;
    h.gap = gap;
    h.area = hc * width;
    h.min_width = std::move(width);
    h.max_width = std::move(cap);
    cand.hyperbolas.push_back(std::move(h));
  };

  for (std::size_t k = 0; k <= j; ++k) {
    add(Side::Left, k, false, layout.rect(i, k).right - x0, prefix_cap(k + 1));
    if (k < j && layout.rect(i, k + 1).left > layout.rect(i, k).right) {
      add(Side::Left, k, true, layout.rect(i, k + 1).left - x0, prefix_cap(k + 1));
    }
  }
  for (std::size_t k = c; k-- > j + 1;) {
    add(Side::Right, k, false, x1 - layout.rect(i, k).left, suffix_cap(k - 1));
    if (k > j + 1 && layout.rect(i, k).left > layout.rect(i, k - 1).right) {
      add(Side::Right, k - 1, true, x1 - layout.rect(i, k - 1).right, suffix_cap(k - 1));
    }
  }

  for (const auto& h : cand.hyperbolas) {
    if (h.max_width && *h.max_width < h.min_width) return cand;  // already infeasible
    Rational lo = h.min_height();
    if (lo > cand.valid_from) cand.valid_from = lo;
  }

  // The gap closes where the prefix ending at R(i,j) and the suffix starting
  // at R(i,j+1) together span the full row.
  Rational left_area = hc * (layout.rect(i, j).right - x0);
  Rational right_area = hc * (x1 - layout.rect(i, j + 1).left);
  Rational closing = (left_area + right_area) / cand.row_width;
  if (closing >= cand.valid_from && closing < hc) cand.new_height = closing;
  return cand;
}

/// Applies a candidate in place: the target row is lowered to the new height,
/// its cells left of the gap stretched rightwards from the left edge, those
/// right of the gap leftwards from the right edge. Other rows do not move.
inline Layout apply_shrink(const Layout& layout, const ShrinkCandidate& cand) {
  if (!cand.new_height) throw std::invalid_argument("candidate has no new height");
  const std::size_t i = cand.target.row;
  const std::size_t j = cand.target.gap_after_col;
  const Rational x0 = layout.min_x();
  const Rational x1 = layout.max_x();
  const Rational stretch = cand.current_height / *cand.new_height;

  std::vector<Rational> hs = layout.heights.values();
  hs[i] = *cand.new_height;
  Layout out{layout.table, RowHeights(std::move(hs)), layout.order, layout.rects};
  for (std::size_t k = 0; k < layout.cols(); ++k) {
    CellRect& r = out.rect(i, k);
    if (k <= j) {
      r.left = x0 + stretch * (r.left - x0);
      r.right = x0 + stretch * (r.right - x0);
    } else {
      r.left = x1 - stretch * (x1 - r.left);
      r.right = x1 - stretch * (x1 - r.right);
    }
  }
  return out;
}

struct ImproveStep {
  std::size_t iteration = 0;
  std::size_t row = 0;
  std::size_t gap_after_col = 0;
  Rational old_height;
  Rational new_height;
  Rational excess_before;
  Rational excess_after;
};

struct ImproveResult {
  RowHeights heights;
  Layout layout;
  std::vector<ImproveStep> log;
};

constexpr std::size_t kDefaultMaxIters = 100;

/// Local improvement of row heights. Each iteration takes the largest empty
/// rectangle whose row can be lowered to close it, re-runs the greedy layout
/// with the new height and keeps the change only if total excess drops.
inline ImproveResult local_improve(const Table& table, const RowHeights& heights,
                                   std::size_t max_iters = kDefaultMaxIters) {
  auto shared = std::make_shared<const Table>(table);
  const RowOrder order = RowOrder::identity(table.rows());
  ImproveResult result{heights, greedy_layout(shared, heights, order), {}};
  Rational excess = excess_area(result.layout);

  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    bool accepted = false;
    for (const EmptyRect& gap : empty_rectangles(result.layout)) {
      ShrinkCandidate cand = shrink_candidate(result.layout, gap);
      if (!cand.new_height) continue;

      Layout in_place = apply_shrink(result.layout, cand);
      if (!layout_violations(in_place).empty() || split_count(in_place) != 0) {
        throw std::logic_error("shrink candidate produced an invalid layout");
      }
      Layout relaid = greedy_layout(shared, in_place.heights, order);
      Rational relaid_excess = excess_area(relaid);
      if (relaid_excess > excess_area(in_place)) throw std::logic_error("greedy re-layout worse than in-place shrink");
      if (relaid_excess >= excess) continue;

      result.log.push_back({iter + 1, gap.row, gap.gap_after_col, cand.current_height, *cand.new_height, excess,
                            relaid_excess});
      result.heights = in_place.heights;
      result.layout = std::move(relaid);
      excess = relaid_excess;
      accepted = true;
      break;
    }
    if (!accepted) break;
  }
  return result;
}

}  // namespace streamtable
