#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "axent/bigint.hpp"
#include "axent/entropy_report.hpp"
#include "axent/sft1d.hpp"
#include "axent/transition_matrix.hpp"
#include "axent/tree_axial.hpp"

namespace axent {

// Subtree of the d-tree whose generator words follow the adjacency matrix M:
// f_j may follow f_i iff M[i,j] = 1. The root has one child per generator.
struct MarkovCayleyTree {
  TransitionMatrix adjacency;

  std::size_t d() const { return adjacency.size(); }

  static MarkovCayleyTree golden_mean_tree();  // M = [[1,1],[1,0]]
  static MarkovCayleyTree g1();                // M = [[1,1],[0,1]]
  static MarkovCayleyTree full_tree(std::size_t d);
};

struct TreeLevels {
  std::vector<BigInt> level_sizes;  // |T_n|, n = 0..n_max (|T_0| = 1)
  std::vector<BigInt> ball_sizes;   // |Delta_n| = sum_{i <= n} |T_i|
  // |T_n| / |Delta_n| and the fraction of level-n vertices with at least two children.
  std::vector<double> level_fraction;
  std::vector<double> branching_ratio;
  std::optional<double> growth_rate;  // Perron value of the essential adjacency; none if empty
};

TreeLevels levels(const MarkovCayleyTree& tree, std::size_t n_max);

// a_1 = 1, a_2 = 2, a_{n+2} = a_{n+1} + a_n, returned as a[1..n_max] (a[0] unused, 0).
std::vector<BigInt> golden_tree_sequence(std::size_t n_max);

// Typed root DP on the tree with axes[j] constraining edges labeled f_j.
BallCounts count_ball_cayley(const MarkovCayleyTree& tree, const std::vector<TransitionMatrix>& axes,
                             std::size_t n, CountMode mode = CountMode::Auto);

// Golden ratio (1 + sqrt 5) / 2.
double golden_ratio();

// On the golden-mean tree with f_1 full and f_2 constrained by X:
//   log|P(Z_1,X)| / rho^3 + log|P(Z_2,X)| / rho^2.
double gm_entropy_E_times_X(const TransitionMatrix& x);

// With f_1 constrained by X and f_2 full: sum_i log|P(Z_i,X)| / rho^(i+3),
// evaluated as log k minus a nonnegative deficit series.
EntropyReport gm_entropy_X_times_E(const TransitionMatrix& x, double tail_tol = 1e-12);

struct GmPartitionCheck {
  std::size_t n = 0;
  BigInt e_times_x_count, e_times_x_product;
  BigInt x_times_e_count, x_times_e_product;
  bool e_times_x = false;
  bool x_times_e = false;

  bool ok() const { return e_times_x && x_times_e; }
  std::string detail() const;
};

// Exact DP counts on the golden-mean tree against the two partition products
//   |Z_1|^(a_n) |Z_2|^((S_n - a_n)/2)  and  |Z_{n+1}| |Z_n| prod_{i<n} |Z_i|^(a_{n-i}),
// with S_n = sum_{i=1}^{n+1} a_i. Requires n >= 1.
GmPartitionCheck verify_gm_partitions(const TransitionMatrix& x, std::size_t n);

struct StrictProbe {
  double gamma = 0.0;
  double h_x = 0.0;
  double h_e_times_x = 0.0;  // depth estimates
  double h_x_times_e = 0.0;
  double margin_e_times_x = 0.0;
  double margin_x_times_e = 0.0;
  double level_fraction = 0.0;   // |T_n| / |Delta_n| at the probe depth
  double limit_fraction = 0.0;   // (gamma - 1) / gamma
  double branching_ratio = 0.0;  // p_n at the probe depth
  std::optional<double> series_e_times_x;  // full-tree series value when M is all ones
};

// Depth estimates of h(E x X) and h(X x E) against h(X) = log lambda_X on a tree
// with growth rate above 1. Throws PreconditionError for gamma <= 1 or a full X.
StrictProbe strict_inequality_probe(const MarkovCayleyTree& tree, const TransitionMatrix& x, std::size_t depth);

// sum_{i <= n+1} log|P(Z_i,X)| / ((n+1)(n+2)/2) for n = 1..n_max, i.e. the
// per-vertex count of E x X on the tree with M = [[1,1],[0,1]]. Converges to
// log lambda_X; requires X primitive.
EntropyReport g1_entropy(const TransitionMatrix& x, std::size_t n_max);

}  // namespace axent
