#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace axent {

// Result of an entropy computation: an optional closed form, the numeric
// sequence it was checked against, and truncation/convergence metadata.
struct EntropyReport {
  std::string quantity;
  std::optional<double> closed_form;
  std::optional<double> value;  // best available numeric value

  // estimates[i] belongs to size parameter first_index + i (width, depth, ...).
  std::vector<double> estimates;
  std::size_t first_index = 1;

  std::size_t terms = 0;     // series terms summed, when the value is a partial sum
  double tail_bound = 0.0;   // bound on the omitted series tail
  std::optional<double> cauchy_diff;  // |last - previous| of the estimate sequence
  bool monotone_nonincreasing = false;
  std::vector<std::string> notes;

  // Distance between closed form and last estimate, when both exist.
  std::optional<double> gap() const;

  nlohmann::json to_json() const;
};

// Fills cauchy_diff and the monotonicity flag from `estimates`.
void attach_sequence_diagnostics(EntropyReport& report);

}  // namespace axent
