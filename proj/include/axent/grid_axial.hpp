#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "axent/entropy_report.hpp"
#include "axent/log_count.hpp"
#include "axent/sparse_graph.hpp"
#include "axent/transition_matrix.hpp"

namespace axent {

// Axial product of one-dimensional SFTs on N^d: the line along axis i is a
// word of axes()[i]. A spec with no axes (d = 0) only fixes the alphabet.
class GridAxialSpec {
 public:
  GridAxialSpec(std::size_t alphabet, std::vector<TransitionMatrix> axes);
  explicit GridAxialSpec(std::vector<TransitionMatrix> axes);

  static GridAxialSpec isotropic(const TransitionMatrix& a, std::size_t d);

  std::size_t d() const { return axes_.size(); }
  std::size_t alphabet() const { return alphabet_; }
  const std::vector<TransitionMatrix>& axes() const { return axes_; }
  bool isotropic() const;

 private:
  std::size_t alphabet_;
  std::vector<TransitionMatrix> axes_;
};

struct Box {
  std::vector<std::size_t> dims;

  std::size_t cells() const;
};

struct GridBudget {
  std::size_t max_cells = 64;                 // backtracking path
  std::uint64_t max_nodes = 400'000'000;      // backtracking search nodes
  std::size_t max_width = 10;                 // transfer path column height
  std::size_t max_columns = std::size_t{1} << 20;
  std::size_t max_edges = 50'000'000;
};

enum class CountPath { Auto, Backtrack, Transfer };

// Number of labelings of the box in which every axis-i line is a word of X_i.
// Backtrack: cells in lexicographic order, each checked against its
// predecessor along every axis. Transfer (d = 2): column-transfer matrix over
// the words of the second axis, iterated along the first. Auto picks transfer
// for 2-D boxes and backtracking otherwise. Throws BudgetExceeded.
LogCount count_box(const GridAxialSpec& spec, const Box& box, CountPath path = CountPath::Auto,
                   const GridBudget& budget = {});

// Width-w column-transfer graph of a 2-D spec. Columns are the words of length
// `width` of the axis orthogonal to `transfer_axis`; an edge c -> c' exists
// when every row (c_j, c'_j) is allowed by the transfer axis.
struct ColumnTransfer {
  std::size_t width = 0;
  std::vector<std::vector<std::uint8_t>> columns;
  SparseGraph graph;
};

ColumnTransfer build_column_transfer(const GridAxialSpec& spec, std::size_t width, std::size_t transfer_axis = 0,
                                     const GridBudget& budget = {});

// The (2^m + n - 1)-state matrix whose axial square has entropy m log 2 / n:
// a block of 2^m free states, all leading into a chain of n - 1 states whose
// last state returns to every free state. For n = 1 the chain is empty and the
// free block feeds itself, giving the full shift on 2^m symbols.
TransitionMatrix thm21_matrix(unsigned m, unsigned n);

// If `a` equals thm21_matrix(m, n) for some (m, n), returns it.
std::optional<std::pair<unsigned, unsigned>> match_thm21(const TransitionMatrix& a);

// Exact check of |P(Z_{kn x k}, A(m,n) (x) A(m,n))| = n (2^m)^(k^2).
bool verify_thm21_count(unsigned m, unsigned n, unsigned k, const GridBudget& budget = {});

double entropy_closed_thm21(unsigned m, unsigned n);

// Strip estimates h_w = log(lambda(T_w)) / w for w = 1..max_width (2-D only).
// Isotropic A(m,n) products also carry their closed form m log 2 / n.
EntropyReport entropy_estimate_grid(const GridAxialSpec& spec, std::size_t max_width, std::size_t transfer_axis = 0,
                                    const GridBudget& budget = {}, double tol = 1e-12);

// Entropy of E^r (x) inner: equal to the entropy of the inner product. Uses the
// closed form log(lambda) for a one-axis inner product, log(alphabet) when r = d,
// and the strip estimator for a 2-D inner product.
EntropyReport full_extension_entropy_grid(const GridAxialSpec& inner, std::size_t r, std::size_t max_width = 6,
                                          double tol = 1e-12);

}  // namespace axent
