#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "axent/log_count.hpp"
#include "axent/sft1d.hpp"
#include "axent/transition_matrix.hpp"

namespace axent {

// Sequences on {1, 2, ...} whose restriction to every progression i, ip, ip^2, ...
// is a word (or ray) of omega. Patterns on [1, x] factor over the chains
// {i p^l <= x} with p not dividing i.
struct MultiplicativeSystem {
  TransitionMatrix omega;
  std::uint64_t p = 2;
};

struct ChainDecomposition {
  std::uint64_t x = 0;
  std::map<std::uint64_t, std::uint64_t> multiplicity;  // chain length -> number of chains

  std::uint64_t total_length() const;
  bool operator==(const ChainDecomposition&) const = default;
};

// Multiplicities from floor-quotient counts: with g(N) = N - floor(N/p), the
// number of chains of length l is g(floor(x/p^(l-1))) - g(floor(x/p^l)).
ChainDecomposition chain_decompose(std::uint64_t x, std::uint64_t p);

// Same, by walking every chain start i <= x with p not dividing i.
ChainDecomposition chain_decompose_linear(std::uint64_t x, std::uint64_t p);

// |P(Z_x, X_omega^p)| = prod_l |omega_l|^(mult(l)). Auto is exact while x log2 k < 10^6.
LogCount count_mis(const MultiplicativeSystem& sys, std::uint64_t x, CountMode mode = CountMode::Auto);

struct MisEntropy {
  double value = 0.0;
  double deficit = 0.0;  // log k - value, summed directly
  std::size_t terms = 0;
  double tail_bound = 0.0;
};

// h = (1 - 1/p)^2 sum_i log|omega_i| / p^(i-1), summed as log k minus the
// nonnegative series (1 - 1/p)^2 sum_i (i log k - log|omega_i|) / p^(i-1).
// Full shifts give log k exactly; an empty omega gives -inf.
MisEntropy mis_entropy(const MultiplicativeSystem& sys, double tail_tol = 1e-12);

struct ResidualRow {
  std::uint64_t x = 0;
  std::optional<std::int64_t> n;  // index of x in a p^n + k sequence
  double log_count = 0.0;
  double residual = 0.0;   // log count - x h
  double predicted = 0.0;  // (1 - 1/p)^2 sum_{i > r} x log|omega_i| / p^(i-1), r = floor(log_p x)
  double difference = 0.0;
  std::optional<double> residual_per_n;
};

// Residuals are computed chain by chain as sum_l mult(l)(l eta - D_l) with
// eta = log k - h and D_l = l log k - log|omega_l|, so full shifts give exactly 0.
std::vector<ResidualRow> boundary_residual(const MultiplicativeSystem& sys, const std::vector<std::uint64_t>& xs,
                                           const std::vector<std::int64_t>& ns = {});

struct SurfaceRow {
  std::size_t n = 0;
  double ball = 0.0;     // |Delta_n|
  double log_lhs = 0.0;  // log|P(Delta_n, E^(d-1) x omega)|
  double bulk = 0.0;     // |Delta_n| h
  double surface = 0.0;  // log_lhs - bulk
  double predicted = 0.0;
  double unexplained = 0.0;  // surface - predicted
  std::optional<double> surface_per_n;
  double surface_per_ball = 0.0;
  // For small n: exact left side, the partition product and the tree DP agree.
  std::optional<bool> exact_match;
};

struct SurfaceReport {
  std::size_t d = 0;
  double entropy = 0.0;
  std::vector<SurfaceRow> rows;
};

// Rows n = 1..n_max. The left side is the partition product over pieces: one
// omega-line of length n + 1 and (d-1) d^(n-j) lines of length j, j = 1..n.
// Exact cross-checks run for n <= exact_limit.
SurfaceReport tree_surface_correction(const TransitionMatrix& omega, std::size_t d, std::size_t n_max,
                                      std::size_t exact_limit = 6);

}  // namespace axent
