#include "axent/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "axent/errors.hpp"
#include "axent/grid_axial.hpp"

namespace axent {

namespace {

unsigned parse_positive(const std::string& text, const std::string& ref) {
  unsigned value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || value == 0) {
    throw ConfigError("matrix reference '" + ref + "': expected a positive integer, got '" + text + "'");
  }
  return value;
}

}  // namespace

TransitionMatrix matrix_from_json(const nlohmann::json& j) {
  // Files may hold the bare row array; inline literals need the object form.
  if (!j.is_array() && (!j.is_object() || !j.contains("rows")))
    throw ConfigError("matrix literal must be an object with \"rows\"");
  const auto& rows = j.is_array() ? j : j.at("rows");
  if (!rows.is_array()) throw ConfigError("matrix literal: \"rows\" must be an array");
  std::vector<std::vector<int>> r;
  for (const auto& row : rows) {
    if (!row.is_array()) throw ConfigError("matrix literal: every row must be an array");
    std::vector<int> vals;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw ConfigError("matrix literal: entries must be integers 0 or 1");
      vals.push_back(v.get<int>());
    }
    r.push_back(std::move(vals));
  }
  if (j.contains("size")) {
    if (!j.at("size").is_number_integer() || j.at("size").get<long>() != static_cast<long>(r.size())) {
      throw ConfigError("matrix literal: \"size\" does not match the number of rows");
    }
  }
  return TransitionMatrix::from_rows(r);
}

nlohmann::json matrix_to_json(const TransitionMatrix& m) {
  return nlohmann::json{{"size", m.size()}, {"rows", m.rows()}};
}

NamedMatrix parse_matrix_ref(const std::string& ref) {
  if (ref.empty()) throw ConfigError("empty matrix reference");

  if (ref.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(ref);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("malformed matrix literal: ") + e.what());
    }
    return {ref, matrix_from_json(j), std::nullopt};
  }
  if (ref.front() == '@') {
    std::ifstream in(ref.substr(1));
    if (!in) throw ConfigError("cannot open matrix file '" + ref.substr(1) + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("malformed matrix file '" + ref.substr(1) + "': " + e.what());
    }
    return {ref, matrix_from_json(j), std::nullopt};
  }

  if (ref == "golden_mean") return {ref, TransitionMatrix::golden_mean(), std::nullopt};

  const auto colon = ref.find(':');
  if (colon == std::string::npos) throw ConfigError("unknown matrix preset '" + ref + "'");
  const std::string name = ref.substr(0, colon);
  const std::string arg = ref.substr(colon + 1);

  if (name == "full") return {ref, TransitionMatrix::full(parse_positive(arg, ref)), std::nullopt};
  if (name == "identity") return {ref, TransitionMatrix::identity(parse_positive(arg, ref)), std::nullopt};
  if (name == "cyclic") return {ref, TransitionMatrix::cyclic(parse_positive(arg, ref)), std::nullopt};
  if (name == "thm21") {
    const auto comma = arg.find(',');
    if (comma == std::string::npos) throw ConfigError("matrix reference '" + ref + "': expected thm21:m,n");
    const unsigned m = parse_positive(arg.substr(0, comma), ref);
    const unsigned n = parse_positive(arg.substr(comma + 1), ref);
    return {ref, thm21_matrix(m, n), std::make_pair(m, n)};
  }
  throw ConfigError("unknown matrix preset '" + name + "'");
}

}  // namespace axent
