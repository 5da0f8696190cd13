#pragma once

#include <streamtable/error.hpp>
#include <streamtable/rational.hpp>

#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace streamtable {

/// An r x c grid of strictly positive weights with row and column labels.
/// Construct through validate_table(); the invariants (c >= 2, positive
/// weights, matching label counts) are established there.
class Table {
 public:
  Table() = default;

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  const Rational& weight(std::size_t row, std::size_t col) const { return weights_[row * cols_ + col]; }
  const std::vector<Rational>& weights() const noexcept { return weights_; }

  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }

  Rational row_sum(std::size_t row) const {
    Rational sum = 0;
    for (std::size_t j = 0; j < cols_; ++j) sum += weight(row, j);
    return sum;
  }

  Rational total_weight() const {
    Rational sum = 0;
    for (const auto& w : weights_) sum += w;
    return sum;
  }

  bool operator==(const Table& other) const = default;

 private:
  friend Table validate_table(std::vector<std::vector<Rational>>, std::vector<std::string>,
                              std::vector<std::string>);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> weights_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

inline std::string default_col_label(std::size_t col) {
  // A, B, ..., Z, AA, AB, ...
  std::string label;
  std::size_t n = col + 1;
  while (n > 0) {
    --n;
    label.insert(label.begin(), static_cast<char>('A' + n % 26));
    n /= 26;
  }
  return label;
}

/// Builds a Table from a raw grid. Empty label lists are replaced by defaults
/// ("r1", "r2", ... and "A", "B", ...).
inline Table validate_table(std::vector<std::vector<Rational>> grid, std::vector<std::string> row_labels = {},
                            std::vector<std::string> col_labels = {}) {
  if (grid.empty()) throw Error(ErrorKind::EmptyTable, "table has no rows");
  const std::size_t cols = grid.front().size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].size() != cols) {
      throw Error(ErrorKind::LabelCountMismatch,
                  "row " + std::to_string(i) + " has " + std::to_string(grid[i].size()) + " cells, expected " +
                      std::to_string(cols),
                  i);
    }
  }
  if (cols < 2) throw Error(ErrorKind::TooFewColumns, "a StreamTable needs at least 2 columns");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (grid[i][j] <= 0) {
        throw Error(ErrorKind::NonPositiveWeight,
                    "weight at (" + std::to_string(i) + ", " + std::to_string(j) + ") is " + to_string(grid[i][j]),
                    i, j);
      }
    }
  }
  if (row_labels.empty()) {
    for (std::size_t i = 0; i < grid.size(); ++i) row_labels.push_back("r" + std::to_string(i + 1));
  }
  if (col_labels.empty()) {
    for (std::size_t j = 0; j < cols; ++j) col_labels.push_back(default_col_label(j));
  }
  if (row_labels.size() != grid.size() || col_labels.size() != cols) {
    throw Error(ErrorKind::LabelCountMismatch, "expected " + std::to_string(grid.size()) + " row labels and " +
                                                   std::to_string(cols) + " column labels");
  }

  Table t;
  t.rows_ = grid.size();
  t.cols_ = cols;
  t.weights_.reserve(t.rows_ * t.cols_);
  for (auto& row : grid) {
    for (auto& w : row) t.weights_.push_back(std::move(w));
  }
  t.row_labels_ = std::move(row_labels);
  t.col_labels_ = std::move(col_labels);
  return t;
}

/// One strictly positive height per table row (indexed by table row, not by
/// drawn position).
class RowHeights {
 public:
  RowHeights() = default;
  explicit RowHeights(std::vector<Rational> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] <= 0) {
        throw Error(ErrorKind::NonPositiveHeight, "height of row " + std::to_string(i) + " is " + to_string(values_[i]),
                    i);
      }
    }
  }

  static RowHeights uniform(std::size_t rows, const Rational& delta) {
    return RowHeights(std::vector<Rational>(rows, delta));
  }

  std::size_t size() const noexcept { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Rational>& values() const noexcept { return values_; }

  Rational total() const {
    Rational sum = 0;
    for (const auto& h : values_) sum += h;
    return sum;
  }

  bool operator==(const RowHeights& other) const = default;

 private:
  std::vector<Rational> values_;
};

/// A drawn row order: position p (top to bottom) shows table row perm[p].
class RowOrder {
 public:
  RowOrder() = default;
  explicit RowOrder(std::vector<std::size_t> perm) : perm_(std::move(perm)) {
    std::vector<bool> seen(perm_.size(), false);
    for (std::size_t p : perm_) {
      if (p >= perm_.size() || seen[p]) throw Error(ErrorKind::InvalidOrder, "row order is not a permutation");
      seen[p] = true;
    }
  }

  static RowOrder identity(std::size_t rows) {
    std::vector<std::size_t> perm(rows);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    return RowOrder(std::move(perm));
  }

  std::size_t size() const noexcept { return perm_.size(); }
  std::size_t operator[](std::size_t position) const { return perm_[position]; }
  const std::vector<std::size_t>& perm() const noexcept { return perm_; }

  /// Drawn position of each table row.
  std::vector<std::size_t> positions() const {
    std::vector<std::size_t> pos(perm_.size());
    for (std::size_t p = 0; p < perm_.size(); ++p) pos[perm_[p]] = p;
    return pos;
  }

  RowOrder reversed() const { return RowOrder(std::vector<std::size_t>(perm_.rbegin(), perm_.rend())); }

  auto operator<=>(const RowOrder& other) const = default;

 private:
  std::vector<std::size_t> perm_;
};

}  // namespace streamtable
