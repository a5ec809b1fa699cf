#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "axent/log_count.hpp"
#include "axent/transition_matrix.hpp"

namespace axent {

// Exact counting switches to log-domain above this word length in CountMode::Auto.
inline constexpr std::uint64_t kExactWordLengthLimit = 256;

enum class CountMode { Auto, Exact, Log };

// Symbols that survive the row-deletion fixpoint (symbols with an infinite
// forward path), in the original indexing.
std::vector<bool> essential_symbols(const TransitionMatrix& a);

// Iteratively deletes symbols whose row is all zero. The result may be empty.
// Columns are never deleted on their own: one-sided words only need a future.
TransitionMatrix essentialize(const TransitionMatrix& a);

// Number of admissible words of length n (n >= 1) of the one-sided shift, i.e.
// the entry sum of E^(n-1) for the essential part E. Works on any matrix; the
// result is invariant under essentialization.
LogCount count_words(const TransitionMatrix& a, std::uint64_t n, CountMode mode = CountMode::Auto);

// Counts for word lengths 1..n_max from a single vector iteration.
std::vector<LogCount> word_count_sequence(const TransitionMatrix& a, std::uint64_t n_max,
                                          CountMode mode = CountMode::Auto);

// Natural log of the entry sum |A^i| for i = 1..i_max (not the word counts:
// this is the quantity appearing in growth-rate sums). Log-domain, normalized.
std::vector<double> log_power_sums(const TransitionMatrix& a, std::uint64_t i_max);

struct SpectralData {
  double perron_value = 0.0;
  std::vector<double> left_vec;   // u A = lambda u, u >= 0, max-normalized
  std::vector<double> right_vec;  // A v = lambda v, v >= 0, max-normalized
  double tolerance = 0.0;
  int iterations = 0;
};

// Perron data of a nonempty essential matrix. Handles periodic and reducible
// matrices: each irreducible component is solved separately, then the vectors
// are extended over the vertices that reach (resp. are reached from) a dominant
// component. Throws NonConvergence carrying the last iterate.
SpectralData spectral(const TransitionMatrix& a, double tol = 1e-12, int max_iter = 100000);

// log(perron value) of the essential part; -inf for the empty shift.
double entropy(const TransitionMatrix& a, double tol = 1e-12);

enum class Irreducibility { Irreducible, ReducibleWithIrreducibleComponent, NoIrreducibleComponent };

const char* to_string(Irreducibility c);

Irreducibility classify(const TransitionMatrix& a);

bool is_permutation(const TransitionMatrix& a);

// Transitivity of the one-sided SFT plus existence of a periodic point: the
// essential part is irreducible (which for a nonempty essential graph implies a cycle).
bool transitive_with_period(const TransitionMatrix& a);

// Irreducible and aperiodic (gcd of cycle lengths is 1).
bool is_primitive(const TransitionMatrix& a);

// gcd of cycle lengths of an irreducible matrix; 0 for matrices without cycles.
std::size_t period(const TransitionMatrix& a);

// Admissibility data shared by the axial products. A cell symbol is allowed
// only if it lies in the essential set of every axis (each cell sits on a line
// of every axis, and a line must be a word of its shift); axis matrices are
// masked to their own essential sets so finite lines are words, not just paths.
struct LineConstraints {
  std::size_t alphabet = 0;
  std::vector<bool> symbols;
  std::vector<TransitionMatrix> axes;

  static LineConstraints from_axes(std::size_t alphabet, const std::vector<TransitionMatrix>& axes);
  std::size_t allowed_count() const;
};

}  // namespace axent
