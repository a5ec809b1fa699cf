#include "axent/report_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace axent {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Cell rescale(const Cell& c, bool entropy, const EmitOptions& opts) {
  if (entropy && opts.log_base2) {
    if (const auto* d = std::get_if<double>(&c)) return *d / std::numbers::ln2;
  }
  return c;
}

std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const Integer& v) const { return v.digits; }
  } visitor;
  return std::visit(visitor, c);
}

nlohmann::json cell_json(const Cell& c) {
  struct {
    nlohmann::json operator()(const std::string& s) const { return s; }
    nlohmann::json operator()(std::int64_t v) const { return v; }
    nlohmann::json operator()(double v) const {
      if (std::isfinite(v)) return v;
      return format_double(v);
    }
    nlohmann::json operator()(bool v) const { return v; }
    nlohmann::json operator()(const Integer& v) const {
      if (v.digits.size() < 19) return std::stoll(v.digits);
      return v.digits;
    }
  } visitor;
  return std::visit(visitor, c);
}

}  // namespace

Table& Table::add(std::vector<Cell> row) {
  rows.push_back(std::move(row));
  return *this;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json report_to_json(const Report& report, const EmitOptions& opts) {
  nlohmann::json j;
  j["command"] = report.command;
  j["log_base"] = opts.log_base2 ? "2" : "e";
  if (!opts.timestamp.empty()) j["generated_at"] = opts.timestamp;
  nlohmann::json tables = nlohmann::json::object();
  for (const auto& t : report.tables) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
      nlohmann::json row = nlohmann::json::object();
      for (std::size_t i = 0; i < t.columns.size() && i < r.size(); ++i)
        row[t.columns[i].name] = cell_json(rescale(r[i], t.columns[i].entropy, opts));
      rows.push_back(std::move(row));
    }
    tables[t.name] = std::move(rows);
  }
  j["tables"] = std::move(tables);
  j["notes"] = report.notes;
  return j;
}

void emit(const Report& report, const EmitOptions& opts, std::ostream& out) {
  if (opts.format == Format::Json) {
    out << report_to_json(report, opts).dump(2) << '\n';
    return;
  }
  if (opts.format == Format::Csv) {
    if (!opts.timestamp.empty()) out << "# generated_at: " << opts.timestamp << '\n';
    const bool tagged = report.tables.size() > 1;
    for (const auto& t : report.tables) {
      if (tagged) out << "# table: " << t.name << '\n';
      for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_escape(t.columns[i].name);
      out << '\n';
      for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
          out << (i ? "," : "") << csv_escape(cell_text(rescale(r[i], t.columns[i].entropy, opts)));
        out << '\n';
      }
    }
    for (const auto& n : report.notes) out << "# note: " << n << '\n';
    return;
  }

  if (!opts.timestamp.empty()) out << "generated at " << opts.timestamp << '\n';
  for (const auto& t : report.tables) {
    out << "== " << t.name << " ==\n";
    std::vector<std::vector<std::string>> text;
    std::vector<std::size_t> width(t.columns.size(), 0);
    for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].name.size();
    for (const auto& r : t.rows) {
      std::vector<std::string> line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line.push_back(cell_text(rescale(r[i], t.columns[i].entropy, opts)));
        width[i] = std::max(width[i], line.back().size());
      }
      text.push_back(std::move(line));
    }
    auto print = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        out << (i ? "  " : "") << cells[i];
        if (i + 1 < cells.size()) out << std::string(width[i] - cells[i].size(), ' ');
      }
      out << '\n';
    };
    std::vector<std::string> header;
    for (const auto& c : t.columns) header.push_back(c.name);
    print(header);
    for (const auto& line : text) print(line);
  }
  for (const auto& n : report.notes) out << "note: " << n << '\n';
}

}  // namespace axent
