#pragma once

#include <cstdint>
#include <vector>

#include "axent/bigint.hpp"
#include "axent/cayley.hpp"
#include "axent/grid_axial.hpp"
#include "axent/mis_surface.hpp"

namespace axent {

// Exhaustive enumerators used as ground truth. They share no code with the
// structured counters: every labeling is generated and every line is checked
// with a direct walk-existence test for one-sided extendability.
struct EnumerationBudget {
  std::uint64_t max_assignments = 10'000'000;
  std::size_t max_cells = 24;
};

// Labelings of the box in which every axis line is a word of its axis shift.
BigInt brute_grid(const GridAxialSpec& spec, const Box& box, const EnumerationBudget& budget = {});

// Labelings of the depth-n ball of the tree (the full tree with M all ones is
// the d-tree) whose edges are words of their generator's shift and whose
// leaves extend to an infinite admissible subtree.
BigInt brute_tree(const MarkovCayleyTree& tree, const std::vector<TransitionMatrix>& axes, std::size_t depth,
                  const EnumerationBudget& budget = {});

// Strings x_1..x_x whose every chain i, ip, ip^2, ... is a word of omega.
BigInt brute_mis(const MultiplicativeSystem& sys, std::uint64_t x, const EnumerationBudget& budget = {});

}  // namespace axent
