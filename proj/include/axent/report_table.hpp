#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace axent {

// One value in a report row. Exact integers of any size travel as strings
// tagged `Integer` so they survive every output format unchanged.
struct Integer {
  std::string digits;
};

using Cell = std::variant<std::string, std::int64_t, double, bool, Integer>;

struct Column {
  std::string name;
  bool entropy = false;  // rescaled by the log-base setting
};

struct Table {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  Table& add(std::vector<Cell> row);
};

enum class Format { Csv, Json, Human };

struct Report {
  std::string command;
  std::vector<Table> tables;
  std::vector<std::string> notes;
};

struct EmitOptions {
  Format format = Format::Csv;
  bool log_base2 = false;
  std::string timestamp;  // empty unless timestamps were requested
};

// Doubles are printed with 17 significant digits so values re-parse exactly.
std::string format_double(double v);

void emit(const Report& report, const EmitOptions& opts, std::ostream& out);

nlohmann::json report_to_json(const Report& report, const EmitOptions& opts);

}  // namespace axent
