#pragma once

#include <streamtable/greedy.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <memory>
#include <optional>
#include <random>
#include <thread>
#include <vector>

namespace streamtable {

enum class Objective {
  /// Greedy (no-split) layout with uniform heights; score is excess area.
  MinExcessNoSplit,
  /// Gap-free packed layout; score is the number of splits.
  MinSplitsZeroExcess,
};

inline const char* to_string(Objective objective) {
  return objective == Objective::MinExcessNoSplit ? "min-excess" : "min-splits";
}

struct SearchResult {
  RowOrder best_order;
  Rational score;
  Objective objective = Objective::MinExcessNoSplit;
  std::uint64_t evaluations = 0;
  bool optimal = false;
};

/// Every row drawn gap-free from x = 0 with height delta. Needs equal row sums
/// so that the right edges line up.
inline Layout packed_layout(std::shared_ptr<const Table> table, const RowOrder& order, const Rational& delta) {
  const Table& t = *table;
  if (delta <= 0) throw Error(ErrorKind::NonPositiveParameter, "row height must be positive");
  if (order.size() != t.rows()) throw Error(ErrorKind::InvalidOrder, "row order length differs from row count");
  const Rational first = t.row_sum(0);
  for (std::size_t i = 1; i < t.rows(); ++i) {
    if (t.row_sum(i) != first) {
      throw Error(ErrorKind::UnequalRowSums, "row " + std::to_string(i) + " sums to " + to_string(t.row_sum(i)) +
                                                 ", row 0 to " + to_string(first));
    }
  }
  Layout layout{table, RowHeights::uniform(t.rows(), delta), order, std::vector<CellRect>(t.rows() * t.cols())};
  for (std::size_t i = 0; i < t.rows(); ++i) {
    Rational x = 0;
    for (std::size_t j = 0; j < t.cols(); ++j) {
      CellRect& rect = layout.rect(i, j);
      rect.row = i;
      rect.col = j;
      rect.left = x;
      x += t.weight(i, j) / delta;
      rect.right = x;
    }
  }
  return layout;
}

inline Layout packed_layout(const Table& table, const RowOrder& order, const Rational& delta) {
  return packed_layout(std::make_shared<const Table>(table), order, delta);
}

inline Rational evaluate_order(std::shared_ptr<const Table> table, const RowOrder& order, const Rational& delta,
                               Objective objective) {
  if (objective == Objective::MinExcessNoSplit) {
    if (delta <= 0) throw Error(ErrorKind::NonPositiveParameter, "row height must be positive");
    return excess_area(greedy_layout(table, RowHeights::uniform(table->rows(), delta), order));
  }
  return Rational(static_cast<unsigned long>(split_count(packed_layout(std::move(table), order, delta))));
}

inline Rational evaluate_order(const Table& table, const RowOrder& order, const Rational& delta,
                               Objective objective) {
  return evaluate_order(std::make_shared<const Table>(table), order, delta, objective);
}

struct BruteForceOptions {
  std::size_t max_rows = 9;
  /// Evaluate only orders whose first row index is smaller than the last.
  /// Both objectives are invariant under reversing the order, and the
  /// lexicographically smallest optimum always satisfies this, so the result
  /// does not change.
  bool reversal_symmetry = false;
  /// 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

/// Exhaustive search over all row orders. Ties go to the lexicographically
/// smallest order; the result does not depend on how the work is split.
inline SearchResult brute_force_search(const Table& table, const Rational& delta, Objective objective,
                                       const BruteForceOptions& opts = {}) {
  const std::size_t r = table.rows();
  if (r > opts.max_rows) {
    throw Error(ErrorKind::TooManyRows,
                std::to_string(r) + " rows exceed the brute-force cap of " + std::to_string(opts.max_rows));
  }
  auto shared = std::make_shared<const Table>(table);
  // Surfaces precondition failures (e.g. unequal row sums) before any work.
  evaluate_order(shared, RowOrder::identity(r), delta, objective);

  struct Partial {
    std::optional<std::vector<std::size_t>> best;
    Rational score;
    std::uint64_t evaluations = 0;
  };
  auto search_prefix = [&](std::size_t first) {
    Partial part;
    std::vector<std::size_t> perm;
    perm.push_back(first);
    for (std::size_t i = 0; i < r; ++i) {
      if (i != first) perm.push_back(i);
    }
    do {
      if (opts.reversal_symmetry && r > 1 && perm.front() > perm.back()) continue;
      Rational s = evaluate_order(shared, RowOrder(perm), delta, objective);
      ++part.evaluations;
      if (!part.best || s < part.score) {
        part.best = perm;
        part.score = std::move(s);
      }
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    return part;
  };

  std::size_t workers = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, r);
  std::vector<Partial> parts(r);
  if (workers <= 1) {
    for (std::size_t f = 0; f < r; ++f) parts[f] = search_prefix(f);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t f = w; f < r; f += workers) parts[f] = search_prefix(f);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  SearchResult result;
  result.objective = objective;
  result.optimal = true;
  bool have = false;
  for (auto& part : parts) {
    result.evaluations += part.evaluations;
    if (!part.best) continue;
    // Prefixes are visited in increasing first element, so strict < keeps
    // the lexicographically smallest order among ties.
    if (!have || part.score < result.score) {
      result.score = part.score;
      result.best_order = RowOrder(*part.best);
      have = true;
    }
  }
  return result;
}

struct AnnealSchedule {
  /// Defaults to max(1, initial score).
  std::optional<double> initial_temperature;
  double cooling = 0.995;
  std::size_t steps = 20000;
};

/// Simulated annealing over row orders starting from the identity. Moves are
/// adjacent transpositions or random pair swaps with equal probability;
/// acceptance is Metropolis. Deterministic for a given seed and schedule.
inline SearchResult anneal_search(const Table& table, const Rational& delta, Objective objective,
                                  std::uint64_t seed, const AnnealSchedule& schedule = {}) {
  const std::size_t r = table.rows();
  auto shared = std::make_shared<const Table>(table);
  std::vector<std::size_t> current = RowOrder::identity(r).perm();
  Rational current_score = evaluate_order(shared, RowOrder(current), delta, objective);

  SearchResult result;
  result.objective = objective;
  result.optimal = false;
  result.best_order = RowOrder(current);
  result.score = current_score;
  result.evaluations = 1;
  if (r < 2) return result;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double temperature = schedule.initial_temperature.value_or(std::max(1.0, to_double(current_score)));

  std::vector<std::size_t> candidate;
  for (std::size_t step = 0; step < schedule.steps; ++step) {
    candidate = current;
    if (unit(rng) < 0.5) {
      std::size_t i = std::uniform_int_distribution<std::size_t>(0, r - 2)(rng);
      std::swap(candidate[i], candidate[i + 1]);
    } else {
      std::size_t i = std::uniform_int_distribution<std::size_t>(0, r - 1)(rng);
      std::size_t j = std::uniform_int_distribution<std::size_t>(0, r - 2)(rng);
      if (j >= i) ++j;
      std::swap(candidate[i], candidate[j]);
    }
    Rational s = evaluate_order(shared, RowOrder(candidate), delta, objective);
    ++result.evaluations;
    double diff = to_double(Rational(s - current_score));
    bool accept = diff <= 0 || (temperature > 0 && unit(rng) < std::exp(-diff / temperature));
    if (accept) {
      current.swap(candidate);
      current_score = s;
      if (s < result.score || (s == result.score && current < result.best_order.perm())) {
        result.score = s;
        result.best_order = RowOrder(current);
      }
    }
    temperature *= schedule.cooling;
  }
  return result;
}

}  // namespace streamtable
