#pragma once

#include <streamtable/table.hpp>

#include <random>
#include <vector>

namespace testutil {

using streamtable::Rational;

inline streamtable::Table random_table(std::mt19937_64& rng, std::size_t r, std::size_t c, int max_weight = 4) {
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::vector<std::vector<Rational>> grid(r, std::vector<Rational>(c));
  for (auto& row : grid) {
    for (auto& x : row) x = weight(rng);
  }
  return streamtable::validate_table(std::move(grid));
}

inline std::vector<Rational> random_heights(std::mt19937_64& rng, std::size_t r) {
  static const Rational choices[] = {Rational(1, 2), Rational(1), Rational(2)};
  std::uniform_int_distribution<int> pick(0, 2);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < r; ++i) out.push_back(choices[pick(rng)]);
  return out;
}

inline std::vector<std::size_t> random_order(std::mt19937_64& rng, std::size_t r) {
  std::vector<std::size_t> perm(r);
  for (std::size_t i = 0; i < r; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

}  // namespace testutil
