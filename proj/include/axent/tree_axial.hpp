#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "axent/entropy_report.hpp"
#include "axent/log_count.hpp"
#include "axent/sft1d.hpp"
#include "axent/transition_matrix.hpp"

namespace axent {

// Axial product on the d-tree: the child along generator f_i is constrained by
// axes()[i]. Arity 0 is allowed and denotes a lone root over `alphabet`.
class TreeAxialSpec {
 public:
  TreeAxialSpec(std::size_t alphabet, std::vector<TransitionMatrix> axes);
  explicit TreeAxialSpec(std::vector<TransitionMatrix> axes);

  static TreeAxialSpec isotropic(const TransitionMatrix& a, std::size_t d);

  std::size_t d() const { return axes_.size(); }
  std::size_t alphabet() const { return alphabet_; }
  const std::vector<TransitionMatrix>& axes() const { return axes_; }

  // E^r x this: r full-shift axes placed before the existing ones.
  TreeAxialSpec with_full_axes(std::size_t r) const;

 private:
  std::size_t alphabet_;
  std::vector<TransitionMatrix> axes_;
};

struct BallCounts {
  std::size_t depth = 0;
  std::vector<double> log_by_root;  // log c_n(s); -inf for symbols with no extension
  double log_total = 0.0;
  // |Delta_n| log(alphabet) - log_total, computed without cancellation; 0 for full shifts.
  double log_deficit = 0.0;
  std::optional<std::vector<BigInt>> exact_by_root;
  std::optional<BigInt> exact_total;

  LogCount total() const;
};

// Symbols that root an infinite admissible labeling (greatest fixpoint).
std::vector<bool> tree_extendable_symbols(const TreeAxialSpec& spec);

// Root-symbol DP: c_0(s) = 1 on extendable symbols and
//   c_k(s) = prod_i sum_{t : axes[i][s,t] = 1} c_{k-1}(t).
// Auto runs exactly when the predicted bit length is below 10^6.
BallCounts count_ball(const TreeAxialSpec& spec, std::size_t n, CountMode mode = CountMode::Auto);

// log |P(Delta_j)| and exact |P(Delta_j)| for j = 0..n_max from one DP pass.
std::vector<double> ball_log_totals(const TreeAxialSpec& spec, std::size_t n_max);
std::vector<BigInt> ball_exact_totals(const TreeAxialSpec& spec, std::size_t n_max);

// |Delta_j| log(alphabet) - log|P(Delta_j)| for j = 0..n_max; +inf for empty balls.
std::vector<double> ball_log_deficits(const TreeAxialSpec& spec, std::size_t n_max);

// |Delta_n| of the d-tree: (d^(n+1) - 1)/(d - 1), n + 1 for d = 1, 1 for d = 0.
BigInt ball_size(std::size_t d, std::size_t n);
double ball_size_double(std::size_t d, std::size_t n);

struct SeriesPlan {
  std::size_t terms = 0;
  double tail_bound = 0.0;
};

// Smallest J with r(d-1) log k sum_{j>J} |Delta^(d-r)_{j-1}| / d^(j+1) < tail_tol,
// using the closed form of the geometric tail.
SeriesPlan plan_full_extension_series(std::size_t d, std::size_t r, double log_alphabet, double tail_tol);

// h(E^r x inner) = r(d-1) sum_{j>=1} log|P(Delta_{j-1}, inner)| / d^(j+1).
// Evaluated in deficit form against the full shift on the inner alphabet, so a
// full inner product returns exactly log k. For r = d returns log(alphabet).
EntropyReport full_extension_entropy_tree(const TreeAxialSpec& inner, std::size_t d, std::size_t r,
                                          double tail_tol = 1e-9);

// Same series from a given count sequence: log_ball_count(j) = log|P(Delta_j, inner)|
// for an inner product of arity d - r over `alphabet` symbols.
EntropyReport full_extension_entropy_tree(const std::function<double(std::size_t)>& log_ball_count,
                                          std::size_t alphabet, std::size_t d, std::size_t r,
                                          double tail_tol = 1e-9);

// Exact check of |P(Delta_n, E^r x inner)| =
//   |P(Delta_n, inner)| prod_{j=1}^{n} |P(Delta_{j-1}, inner)|^(r d^(n-j)).
bool verify_partition_identity(const TreeAxialSpec& inner, std::size_t d, std::size_t r, std::size_t n);

// The exact partition product on the right-hand side above.
BigInt partition_product(const TreeAxialSpec& inner, std::size_t d, std::size_t r, std::size_t n);

// Entropy of A(m,n) x identity on the binary tree: m log 2 / (2n).
double thm21_tree_entropy(unsigned m, unsigned n);

// |P(Delta_k, A(m,n) x identity)| from the n x n recurrence on free-block
// positions per level: sum_j (2^m)^(a_k(j)).
BigInt thm21_tree_recurrence_count(unsigned m, unsigned n, std::size_t k);

// The spec A(m,n) x identity(2^m + n - 1).
TreeAxialSpec thm21_tree_spec(unsigned m, unsigned n);

enum class GapClass { ZeroEntropy, AtLeastHalfLog2 };

const char* to_string(GapClass g);

// Dichotomy for isotropic products on the binary tree: positive entropy (then
// at least log 2 / 2) iff some irreducible component of the essential part has
// a row with at least two essential successors.
GapClass isotropic_gap_classify(const TransitionMatrix& a);

// log|P(Delta_n)| / |Delta_n| for n = 1..n_max.
EntropyReport entropy_estimate_tree(const TreeAxialSpec& spec, std::size_t n_max);

struct PermutationCheck {
  bool all_permutation = false;  // every axis is a k-permutation matrix
  bool counts_constant = false;  // |P(Delta_n)| = k for n <= probe depth
  bool holds = false;            // the two sides agree
  std::vector<BigInt> counts;
  std::string detail;
};

// Both sides of: h(E^r x inner) = r log k / d  iff  the irreducible axes are
// k-permutation matrices, the latter probed as |P(Delta_n, inner)| = k.
// Throws PreconditionError unless every axis is a disjoint union of irreducible
// components (irreducible matrices and permutation matrices both qualify).
PermutationCheck permutation_characterization_check(const std::vector<TransitionMatrix>& axes,
                                                    std::size_t probe_depth = 6);

}  // namespace axent
