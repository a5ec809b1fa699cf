#pragma once

#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "axent/transition_matrix.hpp"

namespace axent {

struct NamedMatrix {
  std::string label;
  TransitionMatrix matrix;
  // (m, n) when the matrix came from the thm21:m,n preset.
  std::optional<std::pair<unsigned, unsigned>> thm21;
};

// Resolves a matrix reference:
//   full:k  identity:k  cyclic:k  golden_mean  thm21:m,n
//   {"size": k, "rows": [[...], ...]}   inline JSON literal
//   @path                               file holding a JSON literal
// Throws ConfigError for unknown presets and malformed literals.
NamedMatrix parse_matrix_ref(const std::string& ref);

TransitionMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const TransitionMatrix& m);

}  // namespace axent
