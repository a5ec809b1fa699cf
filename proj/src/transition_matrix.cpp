#include "axent/transition_matrix.hpp"

#include <sstream>

#include "axent/errors.hpp"

namespace axent {

TransitionMatrix TransitionMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  TransitionMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw ConfigError("transition matrix is not square: row " + std::to_string(i) + " has " +
                        std::to_string(rows[i].size()) + " entries, expected " +
                        std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const int v = rows[i][j];
      if (v != 0 && v != 1) {
        throw ConfigError("transition matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                          ") is " + std::to_string(v) + ", expected 0 or 1");
      }
      m.set(i, j, v == 1);
    }
  }
  return m;
}

TransitionMatrix TransitionMatrix::full(std::size_t k) {
  TransitionMatrix m(k);
  std::fill(m.cells_.begin(), m.cells_.end(), 1);
  return m;
}

TransitionMatrix TransitionMatrix::identity(std::size_t k) {
  TransitionMatrix m(k);
  for (std::size_t i = 0; i < k; ++i) m.set(i, i);
  return m;
}

TransitionMatrix TransitionMatrix::cyclic(std::size_t k) {
  TransitionMatrix m(k);
  for (std::size_t i = 0; i < k; ++i) m.set(i, (i + 1) % k);
  return m;
}

TransitionMatrix TransitionMatrix::golden_mean() { return from_rows({{1, 1}, {1, 0}}); }

std::size_t TransitionMatrix::row_sum(std::size_t i) const {
  std::size_t s = 0;
  for (std::size_t j = 0; j < size_; ++j) s += cells_[i * size_ + j];
  return s;
}

std::size_t TransitionMatrix::col_sum(std::size_t j) const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < size_; ++i) s += cells_[i * size_ + j];
  return s;
}

std::size_t TransitionMatrix::ones() const {
  std::size_t s = 0;
  for (auto c : cells_) s += c;
  return s;
}

bool TransitionMatrix::is_essential() const {
  for (std::size_t i = 0; i < size_; ++i) {
    if (row_sum(i) == 0) return false;
  }
  return true;
}

bool TransitionMatrix::is_full() const { return ones() == size_ * size_; }

TransitionMatrix TransitionMatrix::transpose() const {
  TransitionMatrix t(size_);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) t.set(j, i, (*this)(i, j));
  return t;
}

TransitionMatrix TransitionMatrix::submatrix(const std::vector<std::size_t>& symbols) const {
  TransitionMatrix s(symbols.size());
  for (std::size_t a = 0; a < symbols.size(); ++a)
    for (std::size_t b = 0; b < symbols.size(); ++b) s.set(a, b, (*this)(symbols[a], symbols[b]));
  return s;
}

TransitionMatrix TransitionMatrix::masked(const std::vector<bool>& keep) const {
  TransitionMatrix m(size_);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) m.set(i, j, keep[i] && keep[j] && (*this)(i, j));
  return m;
}

std::vector<std::vector<int>> TransitionMatrix::rows() const {
  std::vector<std::vector<int>> r(size_, std::vector<int>(size_, 0));
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) r[i][j] = (*this)(i, j) ? 1 : 0;
  return r;
}

std::string TransitionMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < size_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < size_; ++j) {
      if (j) os << ',';
      os << ((*this)(i, j) ? 1 : 0);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace axent
