#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace axent {

// log(sum_i exp(x_i)) with max-shift; -inf for an empty or all -inf input.
inline double log_sum_exp(std::span<const double> xs) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double x : xs) mx = std::max(mx, x);
  if (std::isinf(mx)) return mx;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - mx);
  return mx + std::log(s);
}

// Sum of j * x^j over j > J, for 0 <= x < 1.
inline double tail_j_xj(double x, double J) {
  return std::pow(x, J + 1) * ((J + 1) - J * x) / ((1 - x) * (1 - x));
}

// Sum of x^j over j > J, for 0 <= x < 1.
inline double tail_xj(double x, double J) { return std::pow(x, J + 1) / (1 - x); }

}  // namespace axent
