#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace axent {

// Square 0/1 matrix over symbols 0..size()-1; the generator of a one-sided SFT.
// A zero-size matrix presents the empty shift.
class TransitionMatrix {
 public:
  TransitionMatrix() = default;
  explicit TransitionMatrix(std::size_t size) : size_(size), cells_(size * size, 0) {}

  // Throws ConfigError unless rows is square with 0/1 entries.
  static TransitionMatrix from_rows(const std::vector<std::vector<int>>& rows);

  static TransitionMatrix full(std::size_t k);
  static TransitionMatrix identity(std::size_t k);
  // Permutation i -> i+1 mod k.
  static TransitionMatrix cyclic(std::size_t k);
  static TransitionMatrix golden_mean();

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool operator()(std::size_t i, std::size_t j) const { return cells_[i * size_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool value = true) { cells_[i * size_ + j] = value ? 1 : 0; }

  std::size_t row_sum(std::size_t i) const;
  std::size_t col_sum(std::size_t j) const;
  std::size_t ones() const;

  // True when every row has a 1 (the row-deletion fixpoint is the whole matrix).
  bool is_essential() const;
  bool is_full() const;

  TransitionMatrix transpose() const;
  // Principal submatrix on the listed symbols, in the given order.
  TransitionMatrix submatrix(const std::vector<std::size_t>& symbols) const;
  // Same indexing; rows and columns of symbols with keep[s]==false are zeroed.
  TransitionMatrix masked(const std::vector<bool>& keep) const;

  std::vector<std::vector<int>> rows() const;
  std::string to_string() const;

  bool operator==(const TransitionMatrix&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint8_t> cells_;
};

}  // namespace axent
