#pragma once

// Deterministic input generators for the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "axent/sft1d.hpp"
#include "axent/transition_matrix.hpp"

namespace gen {

inline axent::TransitionMatrix random_matrix(std::mt19937_64& rng, std::size_t k, double density = 0.5) {
  std::bernoulli_distribution coin(density);
  axent::TransitionMatrix a(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a.set(i, j, coin(rng));
  return a;
}

// Random matrix whose every row has a 1 (so it is already essential).
inline axent::TransitionMatrix random_essential(std::mt19937_64& rng, std::size_t k, double density = 0.5) {
  auto a = random_matrix(rng, k, density);
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  for (std::size_t i = 0; i < k; ++i)
    if (a.row_sum(i) == 0) a.set(i, pick(rng));
  return a;
}

// Every binary k x k matrix, in a fixed order.
inline std::vector<axent::TransitionMatrix> all_matrices(std::size_t k) {
  std::vector<axent::TransitionMatrix> out;
  const std::uint64_t cells = k * k;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits) {
    axent::TransitionMatrix a(k);
    for (std::uint64_t c = 0; c < cells; ++c) a.set(c / k, c % k, (bits >> c) & 1);
    out.push_back(a);
  }
  return out;
}

inline std::vector<axent::TransitionMatrix> named_matrices() {
  using axent::TransitionMatrix;
  return {TransitionMatrix::full(2),
          TransitionMatrix::identity(2),
          TransitionMatrix::golden_mean(),
          TransitionMatrix::cyclic(3),
          TransitionMatrix::from_rows({{1, 1, 0}, {0, 0, 1}, {1, 0, 1}}),
          TransitionMatrix::from_rows({{1, 1}, {0, 1}})};
}

}  // namespace gen
