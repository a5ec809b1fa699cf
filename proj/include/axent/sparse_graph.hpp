#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "axent/transition_matrix.hpp"

namespace axent {

// Directed graph as successor lists; the working form of large transfer matrices.
struct SparseGraph {
  std::vector<std::vector<std::uint32_t>> successors;

  std::size_t size() const { return successors.size(); }
  std::size_t edges() const;

  static SparseGraph from_matrix(const TransitionMatrix& m);
};

using Component = std::vector<std::uint32_t>;

// Strongly connected components in topological order: every edge between two
// different components runs from an earlier component to a later one.
std::vector<Component> strongly_connected_components(const SparseGraph& g);

// A component carries a cycle: more than one vertex, or a self-loop.
bool is_nontrivial(const SparseGraph& g, const Component& c);

struct ComponentPerron {
  double value = 0.0;
  std::vector<double> vector;  // right Perron vector on the component, max-normalized
  int iterations = 0;
};

// Perron value and right vector of an irreducible component by power iteration
// on (A_C + I), stopped by the Collatz-Wielandt bracket
//   min_i ((A+I)x)_i / x_i  <=  lambda + 1  <=  max_i ((A+I)x)_i / x_i.
// The shift makes every irreducible block aperiodic, so periodic components converge.
ComponentPerron component_perron(const SparseGraph& g, const Component& c, double tol, int max_iter);

// Spectral radius: the largest component Perron value (0 for acyclic graphs).
double perron_value(const SparseGraph& g, double tol = 1e-12, int max_iter = 100000);

}  // namespace axent
