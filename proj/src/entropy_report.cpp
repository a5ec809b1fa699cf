#include "axent/entropy_report.hpp"

#include <cmath>

namespace axent {

std::optional<double> EntropyReport::gap() const {
  if (!closed_form || estimates.empty()) return std::nullopt;
  return std::abs(*closed_form - estimates.back());
}

void attach_sequence_diagnostics(EntropyReport& report) {
  const auto& e = report.estimates;
  if (e.size() >= 2) report.cauchy_diff = std::abs(e.back() - e[e.size() - 2]);
  report.monotone_nonincreasing = true;
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (e[i] > e[i - 1] + 1e-12 * std::max(1.0, std::abs(e[i - 1]))) {
      report.monotone_nonincreasing = false;
      break;
    }
  }
}

nlohmann::json EntropyReport::to_json() const {
  nlohmann::json j;
  j["quantity"] = quantity;
  j["closed_form"] = closed_form ? nlohmann::json(*closed_form) : nlohmann::json(nullptr);
  j["value"] = value ? nlohmann::json(*value) : nlohmann::json(nullptr);
  j["estimates"] = estimates;
  j["first_index"] = first_index;
  j["terms"] = terms;
  j["tail_bound"] = tail_bound;
  j["cauchy_diff"] = cauchy_diff ? nlohmann::json(*cauchy_diff) : nlohmann::json(nullptr);
  j["monotone_nonincreasing"] = monotone_nonincreasing;
  j["notes"] = notes;
  return j;
}

}  // namespace axent
