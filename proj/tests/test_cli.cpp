#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "axent/cayley.hpp"
#include "axent/cli.hpp"
#include "axent/mis_surface.hpp"

using namespace axent;

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

// name -> rows of a CSV report (header row first).
std::map<std::string, std::vector<std::vector<std::string>>> parse_csv(const std::string& text) {
  std::map<std::string, std::vector<std::vector<std::string>>> tables;
  std::string current = "";
  for (const auto& line : split(text, '\n')) {
    if (line.empty()) continue;
    if (line.rfind("# table: ", 0) == 0) {
      current = line.substr(9);
      continue;
    }
    if (line[0] == '#') continue;
    tables[current].push_back(split(line, ','));
  }
  return tables;
}

double num(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

const double kLog2 = std::log(2.0);

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("axent_test_" + name);
}

}  // namespace

TEST_CASE("tree report carries the closed form and a close estimate") {
  const auto r = run({"tree", "--d", "2", "--axes", "thm21:1,2", "identity:3", "--series", "--r", "0", "--depth", "25"});
  REQUIRE(r.status == cli::kOk);
  const auto t = parse_csv(r.out);
  const auto& summary = t.at("summary");
  REQUIRE(summary.size() == 2);
  CHECK(num(summary[1][1]) == doctest::Approx(kLog2 / 4).epsilon(1e-15));
  CHECK(std::abs(num(summary[1][2]) - kLog2 / 4) <= 1e-3);
}

TEST_CASE("thm21 sweeps") {
  const auto grid = run({"sweep", "--family", "thm21", "--m", "1..2", "--n", "1..3", "--lattice", "grid"});
  REQUIRE(grid.status == cli::kOk);
  const auto rows = parse_csv(grid.out).at("");
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == std::vector<std::string>{"m", "n", "entropy", "verified"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double m = num(rows[i][0]), n = num(rows[i][1]);
    CHECK(num(rows[i][2]) == doctest::Approx(m * kLog2 / n).epsilon(1e-15));
    CHECK(rows[i][3] == "true");
  }
  const auto tree = run({"sweep", "--family", "thm21", "--m", "1", "--n", "1..2", "--lattice", "tree"});
  REQUIRE(tree.status == cli::kOk);
  const auto trows = parse_csv(tree.out).at("");
  REQUIRE(trows.size() == 3);
  CHECK(num(trows[1][2]) == doctest::Approx(kLog2 / 2).epsilon(1e-15));
  CHECK(num(trows[2][2]) == doctest::Approx(kLog2 / 4).epsilon(1e-15));
}

TEST_CASE("CSV and JSON values round-trip at full precision") {
  const auto csv = run({"cayley", "--closed-form", "gm", "--axes", "full:2", "identity:2", "golden_mean"});
  REQUIRE(csv.status == cli::kOk);
  const auto rows = parse_csv(csv.out).at("");
  REQUIRE(rows.size() == 4);
  const std::vector<TransitionMatrix> xs{TransitionMatrix::full(2), TransitionMatrix::identity(2),
                                         TransitionMatrix::golden_mean()};
  const auto& header = rows[0];
  const auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(num(rows[i + 1][col("h_E_times_X")]) == gm_entropy_E_times_X(xs[i]));
    CHECK(num(rows[i + 1][col("h_X_times_E")]) == *gm_entropy_X_times_E(xs[i]).value);
  }

  const auto js = run({"--format", "json", "cayley", "--closed-form", "gm", "--axes", "full:2", "identity:2",
                       "golden_mean"});
  REQUIRE(js.status == cli::kOk);
  const auto j = nlohmann::json::parse(js.out);
  const auto& forms = j.at("tables").at("closed_forms");
  REQUIRE(forms.size() == 3);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(forms[i].at("h_E_times_X").get<double>() == gm_entropy_E_times_X(xs[i]));
    CHECK(forms[i].at("h_X_times_E").get<double>() == *gm_entropy_X_times_E(xs[i]).value);
  }
}

TEST_CASE("exact counts survive serialization") {
  const auto r = run({"--format", "json", "mis", "--omega", "golden_mean", "--x", "8,400"});
  REQUIRE(r.status == cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  std::string big;
  for (const auto& [name, table] : j.at("tables").items())
    for (const auto& row : table)
      for (const auto& [key, v] : row.items())
        if (key == "count" && v.is_string()) big = v.get<std::string>();
  CHECK(big == count_mis({TransitionMatrix::golden_mean(), 2}, 400).exact_value().str());
}

TEST_CASE("identical invocations give identical bytes") {
  const std::vector<std::string> args{"tree", "--d", "2", "--axes", "golden_mean", "golden_mean", "--depth", "12"};
  const auto a = run(args), b = run(args);
  CHECK(a.status == cli::kOk);
  CHECK(a.out == b.out);
  const auto h1 = run({"--format", "human", "mis", "--omega", "golden_mean", "--x", "p^n+1,n=4..10", "--residuals"});
  const auto h2 = run({"--format", "human", "mis", "--omega", "golden_mean", "--x", "p^n+1,n=4..10", "--residuals"});
  CHECK(h1.out == h2.out);
}

TEST_CASE("exit statuses") {
  CHECK(run({"grid", "--axes", "bogus"}).status == cli::kConfigError);
  CHECK(run({"grid", "--axes", "[[1,0],[1]]"}).status == cli::kConfigError);
  CHECK(run({"frobnicate"}).status == cli::kConfigError);
  CHECK(run({}).status == cli::kConfigError);
  CHECK(run({"--format", "xml", "grid", "--axes", "golden_mean"}).status == cli::kConfigError);
  const auto budget = run({"oracle", "--kind", "grid", "--axes", "full:2", "full:2", "--box", "6x6"});
  CHECK(budget.status == cli::kComputationFailed);
  CHECK(budget.err.find("budget") != std::string::npos);
  // The unit-growth tree has no strict gap to probe.
  CHECK(run({"cayley", "--tree", "g1", "--axes", "golden_mean", "--probe-strict"}).status == cli::kConfigError);
  CHECK(run({"--help"}).status == cli::kOk);
}

TEST_CASE("oracle subcommand agrees with the structured counter") {
  const auto r = run({"oracle", "--kind", "tree", "--tree", "gm", "--axes", "full:2", "identity:2", "--depth", "1"});
  REQUIRE(r.status == cli::kOk);
  CHECK(r.out.find(",4,4,") != std::string::npos);
}

TEST_CASE("config files expand to flags") {
  const auto path = temp_file("config.json");
  {
    std::ofstream f(path);
    f << R"({"command": "sweep", "format": "json",
            "options": {"family": "thm21", "m": "1..2", "n": "2", "lattice": "tree"}})";
  }
  const auto r = run({"--config", path.string()});
  REQUIRE(r.status == cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  const auto& rows = j.at("tables").at("sweep");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].at("entropy").get<double>() == doctest::Approx(2 * kLog2 / 4).epsilon(1e-15));

  {
    std::ofstream f(path);
    f << "{not json";
  }
  CHECK(run({"--config", path.string()}).status == cli::kConfigError);
  CHECK(run({"--config", (path.string() + ".missing")}).status == cli::kConfigError);
  std::filesystem::remove(path);
}

TEST_CASE("matrix literals and files") {
  const auto literal = run({"grid", "--axes", R"({"rows":[[1,1],[1,0]]})", "golden_mean", "--box", "2x2", "--exact"});
  REQUIRE(literal.status == cli::kOk);
  CHECK(literal.out.find("2x2,7,") != std::string::npos);
  const auto path = temp_file("matrix.json");
  {
    std::ofstream f(path);
    f << "[[1,1],[1,0]]";
  }
  const auto file = run({"grid", "--axes", "@" + path.string(), "golden_mean", "--box", "2x2", "--exact"});
  CHECK(file.out == literal.out);
  std::filesystem::remove(path);
  CHECK(run({"grid", "--axes", R"({"rows":[[1,2],[1,0]]})", "--box", "2x2"}).status == cli::kConfigError);
}

TEST_CASE("output files and log base") {
  const auto path = temp_file("out.csv");
  const auto r = run({"--output", path.string(), "sweep", "--family", "thm21", "--m", "1", "--n", "1"});
  REQUIRE(r.status == cli::kOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str().find("0.69314718055994529") != std::string::npos);
  std::filesystem::remove(path);

  const auto base2 = run({"--log-base", "2", "sweep", "--family", "thm21", "--m", "1..2", "--n", "1..3"});
  REQUIRE(base2.status == cli::kOk);
  const auto rows = parse_csv(base2.out).at("");
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(num(rows[i][2]) == doctest::Approx(num(rows[i][0]) / num(rows[i][1])).epsilon(1e-15));
}
