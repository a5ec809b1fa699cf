#include "axent/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>

#include "axent/cayley.hpp"
#include "axent/errors.hpp"
#include "axent/grid_axial.hpp"
#include "axent/matrix_io.hpp"
#include "axent/mis_surface.hpp"
#include "axent/oracle.hpp"
#include "axent/report_table.hpp"
#include "axent/tree_axial.hpp"

namespace axent::cli {

namespace {

Integer big(const BigInt& v) { return {to_string(v)}; }

Cell opt_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::string();
}

std::vector<NamedMatrix> resolve(const std::vector<std::string>& refs) {
  std::vector<NamedMatrix> out;
  for (const auto& r : refs) out.push_back(parse_matrix_ref(r));
  return out;
}

std::vector<TransitionMatrix> matrices(const std::vector<NamedMatrix>& named) {
  std::vector<TransitionMatrix> out;
  for (const auto& n : named) out.push_back(n.matrix);
  return out;
}

// Axes for a product of arity `arity`: one matrix is repeated, otherwise the
// count must match.
std::vector<TransitionMatrix> axes_for(const std::vector<NamedMatrix>& named, std::size_t arity) {
  if (named.size() == 1) return std::vector<TransitionMatrix>(arity, named.front().matrix);
  if (named.size() != arity) {
    throw ConfigError("expected " + std::to_string(arity) + " axis matrices (or one to repeat), got " +
                      std::to_string(named.size()));
  }
  return matrices(named);
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  auto num = [&](const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != s.size()) throw ConfigError("malformed range '" + text + "'");
    return static_cast<std::uint64_t>(v);
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const auto v = num(text);
    return {v, v};
  }
  const auto lo = num(text.substr(0, dots));
  const auto hi = num(text.substr(dots + 2));
  if (lo > hi) throw ConfigError("empty range '" + text + "'");
  return {lo, hi};
}

Box parse_box(const std::string& text) {
  Box b;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) b.dims.push_back(parse_range(part).first);
  if (b.dims.empty()) throw ConfigError("malformed box '" + text + "'");
  for (auto n : b.dims)
    if (n == 0) throw ConfigError("box dimensions must be positive: '" + text + "'");
  return b;
}

std::string box_text(const Box& b) {
  std::string s;
  for (std::size_t i = 0; i < b.dims.size(); ++i) s += (i ? "x" : "") + std::to_string(b.dims[i]);
  return s;
}

// x values: "16", "4,8,16", or "p^n+k,n=a..b" (base may be p or a number).
struct XSequence {
  std::vector<std::uint64_t> xs;
  std::vector<std::int64_t> ns;
};

XSequence parse_x(const std::string& text, std::uint64_t p) {
  XSequence seq;
  const auto caret = text.find('^');
  if (caret == std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) seq.xs.push_back(parse_range(part).first);
    if (seq.xs.empty()) throw ConfigError("malformed x specification '" + text + "'");
    return seq;
  }
  const auto marker = text.find(",n=");
  if (marker == std::string::npos) throw ConfigError("x sequence needs ',n=a..b': '" + text + "'");
  const std::string base_text = text.substr(0, caret);
  const std::uint64_t base = base_text == "p" ? p : parse_range(base_text).first;
  std::string rest = text.substr(caret + 1, marker - caret - 1);  // "n", "n+3", "n-1"
  if (rest.empty() || rest.front() != 'n') throw ConfigError("malformed x sequence '" + text + "'");
  std::int64_t shift = 0;
  if (rest.size() > 1) {
    const char sign = rest[1];
    if (sign != '+' && sign != '-') throw ConfigError("malformed x sequence '" + text + "'");
    shift = static_cast<std::int64_t>(parse_range(rest.substr(2)).first) * (sign == '-' ? -1 : 1);
  }
  const auto [lo, hi] = parse_range(text.substr(marker + 3));
  for (std::uint64_t n = lo; n <= hi; ++n) {
    const double v = std::pow(static_cast<double>(base), static_cast<double>(n)) + static_cast<double>(shift);
    if (v < 1 || v > 1e15) throw ConfigError("x sequence value out of range at n=" + std::to_string(n));
    std::uint64_t pw = 1;
    for (std::uint64_t i = 0; i < n; ++i) pw *= base;
    seq.xs.push_back(static_cast<std::uint64_t>(static_cast<std::int64_t>(pw) + shift));
    seq.ns.push_back(static_cast<std::int64_t>(n));
  }
  return seq;
}

MarkovCayleyTree parse_tree(const std::string& text) {
  if (text == "gm" || text == "golden") return MarkovCayleyTree::golden_mean_tree();
  if (text == "g1") return MarkovCayleyTree::g1();
  if (text.rfind("full:", 0) == 0) return MarkovCayleyTree::full_tree(parse_range(text.substr(5)).first);
  return {parse_matrix_ref(text).matrix};
}

void add_summary(Report& rep, const EntropyReport& e, const std::string& name = "summary") {
  Table t{name,
          {{"quantity"},
           {"closed_form", true},
           {"value", true},
           {"gap"},
           {"cauchy_diff"},
           {"terms"},
           {"tail_bound"},
           {"monotone_nonincreasing"}},
          {}};
  t.add({e.quantity, opt_cell(e.closed_form), opt_cell(e.value), opt_cell(e.gap()), opt_cell(e.cauchy_diff),
         static_cast<std::int64_t>(e.terms), e.tail_bound, e.monotone_nonincreasing});
  rep.tables.push_back(std::move(t));
  rep.notes.insert(rep.notes.end(), e.notes.begin(), e.notes.end());
}

void add_estimates(Report& rep, const EntropyReport& e, const std::string& index_name) {
  Table t{"estimates", {{index_name}, {"estimate", true}}, {}};
  for (std::size_t i = 0; i < e.estimates.size(); ++i)
    t.add({static_cast<std::int64_t>(e.first_index + i), e.estimates[i]});
  rep.tables.push_back(std::move(t));
}

struct Globals {
  std::string output;
  std::string format = "csv";
  std::string log_base = "e";
  std::uint64_t budget = 0;
  bool timestamps = false;
};

GridBudget grid_budget(const Globals& g) {
  GridBudget b;
  if (g.budget) b.max_nodes = g.budget;
  return b;
}

EnumerationBudget enum_budget(const Globals& g) {
  EnumerationBudget b;
  if (g.budget) b.max_assignments = g.budget;
  return b;
}

// ---- grid ------------------------------------------------------------------

struct GridArgs {
  std::vector<std::string> axes;
  std::size_t d = 0;
  std::vector<std::string> boxes;
  bool exact = false;
  bool transfer = false;
  std::size_t estimate = 0;
  std::size_t transfer_axis = 0;
  std::size_t full_extension = 0;
  unsigned verify_thm21 = 0;
};

Report run_grid(const GridArgs& a, const Globals& g, std::string& failure) {
  Report rep{"grid", {}, {}};
  const auto named = resolve(a.axes);
  const std::size_t d = a.d ? a.d : (named.size() > 1 ? named.size() : 2);
  const auto budget = grid_budget(g);
  if (a.exact && a.transfer) throw ConfigError("--exact and --transfer are mutually exclusive");

  bool did = false;
  if (a.full_extension > 0) {
    if (a.full_extension > d) throw ConfigError("--full-extension exceeds the dimension");
    const std::size_t inner_d = d - a.full_extension;
    const auto alphabet = named.front().matrix.size();
    const GridAxialSpec inner(alphabet, inner_d == 0 ? std::vector<TransitionMatrix>{} : axes_for(named, inner_d));
    add_summary(rep, full_extension_entropy_grid(inner, a.full_extension, a.estimate ? a.estimate : 6));
    return rep;
  }

  const GridAxialSpec spec(axes_for(named, d));
  if (!a.boxes.empty()) {
    did = true;
    const CountPath path = a.exact ? CountPath::Backtrack : a.transfer ? CountPath::Transfer : CountPath::Auto;
    Table t{"counts", {{"box"}, {"count"}, {"log_count"}}, {}};
    for (const auto& b : a.boxes) {
      const auto box = parse_box(b);
      const auto c = count_box(spec, box, path, budget);
      t.add({box_text(box), c.is_exact() ? Cell(Integer{c.to_string()}) : Cell(std::string()), c.log()});
    }
    rep.tables.push_back(std::move(t));
  }
  if (a.verify_thm21 > 0) {
    did = true;
    Table t{"thm21_counts", {{"m"}, {"n"}, {"k"}, {"expected"}, {"ok"}}, {}};
    bool all = true;
    for (const auto& nm : named) {
      if (!nm.thm21) throw ConfigError("--verify-thm21 needs thm21:m,n axes");
      const auto [m, n] = *nm.thm21;
      for (unsigned k = 1; k <= a.verify_thm21; ++k) {
        const bool ok = verify_thm21_count(m, n, k, budget);
        all = all && ok;
        t.add({static_cast<std::int64_t>(m), static_cast<std::int64_t>(n), static_cast<std::int64_t>(k),
               big(BigInt(n) * pow_big(BigInt(2), std::uint64_t{m} * k * k)), ok});
      }
      if (named.size() > 1 && named[1].label == named[0].label) break;
    }
    rep.tables.push_back(std::move(t));
    if (!all) failure = "thm21 count identity failed";
  }
  if (a.estimate > 0 || !did) {
    const auto e = entropy_estimate_grid(spec, a.estimate ? a.estimate : 6, a.transfer_axis, budget);
    add_estimates(rep, e, "width");
    add_summary(rep, e);
  }
  return rep;
}

// ---- tree ------------------------------------------------------------------

struct TreeArgs {
  std::size_t d = 2;
  std::vector<std::string> axes;
  std::size_t depth = 10;
  bool series = false;
  std::size_t r = 0;
  bool verify_partition = false;
  std::size_t partition_depth = 4;
  bool classify_gap = false;
  double tail_tol = 1e-9;
};

Report run_tree(const TreeArgs& a, const Globals&, std::string& failure) {
  Report rep{"tree", {}, {}};
  const auto named = resolve(a.axes);
  if (a.r > a.d) throw ConfigError("--r exceeds --d");
  const std::size_t alphabet = named.front().matrix.size();
  const std::size_t inner_d = a.d - a.r;
  const TreeAxialSpec inner(alphabet, inner_d == 0 ? std::vector<TransitionMatrix>{} : axes_for(named, inner_d));
  const TreeAxialSpec spec = a.r > 0 ? inner.with_full_axes(a.r) : inner;

  if (a.classify_gap) {
    if (named.size() != 1) throw ConfigError("--classify-gap takes a single axis matrix");
    Table t{"gap", {{"matrix"}, {"class"}}, {}};
    t.add({named.front().label, std::string(to_string(isotropic_gap_classify(named.front().matrix)))});
    rep.tables.push_back(std::move(t));
  }

  if (a.verify_partition) {
    if (a.r == 0) throw ConfigError("--verify-partition needs --r >= 1");
    Table t{"partition", {{"n"}, {"ball_count"}, {"product"}, {"ok"}}, {}};
    bool all = true;
    for (std::size_t n = 0; n <= a.partition_depth; ++n) {
      const auto lhs = count_ball(spec, n, CountMode::Exact);
      const auto rhs = partition_product(inner, a.d, a.r, n);
      const bool ok = *lhs.exact_total == rhs;
      all = all && ok;
      t.add({static_cast<std::int64_t>(n), big(*lhs.exact_total), big(rhs), ok});
    }
    rep.tables.push_back(std::move(t));
    if (!all) failure = "partition identity failed";
  }

  auto est = entropy_estimate_tree(spec, a.depth);
  if (a.series && a.r > 0) {
    const auto s = full_extension_entropy_tree(inner, a.d, a.r, a.tail_tol);
    Table t{"series", {{"d"}, {"r"}, {"value", true}, {"terms"}, {"tail_bound"}, {"dp_estimate", true}}, {}};
    t.add({static_cast<std::int64_t>(a.d), static_cast<std::int64_t>(a.r), opt_cell(s.value),
           static_cast<std::int64_t>(s.terms), s.tail_bound, opt_cell(est.value)});
    rep.tables.push_back(std::move(t));
    if (!est.closed_form && a.r == a.d) est.closed_form = s.value;
  }
  add_estimates(rep, est, "depth");
  add_summary(rep, est);
  return rep;
}

// ---- cayley ----------------------------------------------------------------

struct CayleyArgs {
  std::string tree = "gm";
  std::vector<std::string> axes;
  std::size_t depth = 0;
  std::string closed_form;
  bool verify_partitions = false;
  bool probe_strict = false;
  std::size_t levels = 0;
  double tail_tol = 1e-12;
};

Report run_cayley(const CayleyArgs& a, const Globals&, std::string& failure) {
  Report rep{"cayley", {}, {}};
  const auto tree = parse_tree(a.tree);
  const auto named = resolve(a.axes);

  if (a.levels > 0) {
    const auto lv = levels(tree, a.levels);
    Table t{"levels", {{"n"}, {"level_size"}, {"ball_size"}, {"level_fraction"}, {"branching_ratio"}}, {}};
    for (std::size_t n = 0; n <= a.levels; ++n)
      t.add({static_cast<std::int64_t>(n), big(lv.level_sizes[n]), big(lv.ball_sizes[n]), lv.level_fraction[n],
             lv.branching_ratio[n]});
    rep.tables.push_back(std::move(t));
    if (lv.growth_rate) rep.notes.push_back("growth rate " + format_double(*lv.growth_rate));
  }

  if (a.closed_form == "gm") {
    Table t{"closed_forms", {{"X"}, {"h_X", true}, {"h_E_times_X", true}, {"h_X_times_E", true}}, {}};
    for (const auto& nm : named)
      t.add({nm.label, entropy(nm.matrix), gm_entropy_E_times_X(nm.matrix),
             opt_cell(gm_entropy_X_times_E(nm.matrix, a.tail_tol).value)});
    rep.tables.push_back(std::move(t));
  } else if (a.closed_form == "g1") {
    Table t{"g1", {{"X"}, {"n"}, {"estimate", true}, {"log_lambda", true}, {"gap"}}, {}};
    for (const auto& nm : named) {
      const auto e = g1_entropy(nm.matrix, a.depth ? a.depth : 2000);
      t.add({nm.label, static_cast<std::int64_t>(e.estimates.size()), opt_cell(e.value), opt_cell(e.closed_form),
             opt_cell(e.gap())});
    }
    rep.tables.push_back(std::move(t));
  } else if (!a.closed_form.empty()) {
    throw ConfigError("unknown closed form '" + a.closed_form + "' (expected gm or g1)");
  }

  if (a.verify_partitions) {
    Table t{"partitions",
            {{"X"}, {"n"}, {"E_times_X_count"}, {"E_times_X_product"}, {"X_times_E_count"}, {"X_times_E_product"}, {"ok"}},
            {}};
    bool all = true;
    for (const auto& nm : named) {
      for (std::size_t n = 1; n <= (a.depth ? a.depth : 8); ++n) {
        const auto c = verify_gm_partitions(nm.matrix, n);
        all = all && c.ok();
        t.add({nm.label, static_cast<std::int64_t>(n), big(c.e_times_x_count), big(c.e_times_x_product),
               big(c.x_times_e_count), big(c.x_times_e_product), c.ok()});
      }
    }
    rep.tables.push_back(std::move(t));
    if (!all) failure = "golden-mean tree partition identity failed";
  }

  if (a.probe_strict) {
    Table t{"strict",
            {{"X"},
             {"gamma"},
             {"h_X", true},
             {"h_E_times_X", true},
             {"h_X_times_E", true},
             {"margin_E_times_X", true},
             {"margin_X_times_E", true},
             {"level_fraction"},
             {"limit_fraction"},
             {"branching_ratio"},
             {"series_E_times_X", true}},
            {}};
    for (const auto& nm : named) {
      const auto p = strict_inequality_probe(tree, nm.matrix, a.depth ? a.depth : 30);
      t.add({nm.label, p.gamma, p.h_x, p.h_e_times_x, p.h_x_times_e, p.margin_e_times_x, p.margin_x_times_e,
             p.level_fraction, p.limit_fraction, p.branching_ratio, opt_cell(p.series_e_times_x)});
    }
    rep.tables.push_back(std::move(t));
  }

  if (a.closed_form.empty() && !a.verify_partitions && !a.probe_strict && a.levels == 0) {
    const auto axes = axes_for(named, tree.d());
    const std::size_t depth = a.depth ? a.depth : 10;
    const auto lv = levels(tree, depth);
    Table t{"counts", {{"n"}, {"ball_size"}, {"count"}, {"log_count"}, {"estimate", true}}, {}};
    for (std::size_t n = 0; n <= depth; ++n) {
      const auto c = count_ball_cayley(tree, axes, n);
      const double size = lv.ball_sizes[n].convert_to<double>();
      t.add({static_cast<std::int64_t>(n), big(lv.ball_sizes[n]),
             c.exact_total ? Cell(big(*c.exact_total)) : Cell(std::string()), c.log_total, c.log_total / size});
    }
    rep.tables.push_back(std::move(t));
  }
  return rep;
}

// ---- mis -------------------------------------------------------------------

struct MisArgs {
  std::string omega = "golden_mean";
  std::uint64_t p = 2;
  std::string x;
  bool residuals = false;
  bool tree_surface = false;
  std::size_t d = 2;
  std::size_t n_max = 30;
  double tail_tol = 1e-12;
};

Report run_mis(const MisArgs& a, const Globals&, std::string& failure) {
  Report rep{"mis", {}, {}};
  const MultiplicativeSystem sys{parse_matrix_ref(a.omega).matrix, a.p};
  if (a.p < 2) throw ConfigError("--p must be at least 2");

  const auto h = mis_entropy(sys, a.tail_tol);
  Table ht{"entropy", {{"omega"}, {"p"}, {"entropy", true}, {"terms"}, {"tail_bound"}}, {}};
  ht.add({a.omega, static_cast<std::int64_t>(a.p), h.value, static_cast<std::int64_t>(h.terms), h.tail_bound});
  rep.tables.push_back(std::move(ht));

  if (!a.x.empty()) {
    const auto seq = parse_x(a.x, a.p);
    if (a.residuals) {
      const auto rows = boundary_residual(sys, seq.xs, seq.ns);
      Table t{"residuals", {{"x"}, {"n"}, {"log_count"}, {"residual"}, {"predicted"}, {"difference"}, {"residual_per_n"}}, {}};
      for (const auto& r : rows)
        t.add({Integer{std::to_string(r.x)}, r.n ? Cell(*r.n) : Cell(std::string()), r.log_count, r.residual,
               r.predicted, r.difference, opt_cell(r.residual_per_n)});
      rep.tables.push_back(std::move(t));
    } else {
      Table t{"counts", {{"x"}, {"count"}, {"log_count"}, {"per_site", true}}, {}};
      for (auto x : seq.xs) {
        const auto c = count_mis(sys, x);
        t.add({Integer{std::to_string(x)}, c.is_exact() ? Cell(Integer{c.to_string()}) : Cell(std::string()), c.log(),
               c.log() / static_cast<double>(x)});
      }
      rep.tables.push_back(std::move(t));
    }
  }

  if (a.tree_surface) {
    const auto s = tree_surface_correction(sys.omega, a.d, a.n_max);
    Table t{"tree_surface",
            {{"n"},
             {"ball"},
             {"log_lhs"},
             {"bulk"},
             {"surface"},
             {"predicted"},
             {"unexplained"},
             {"surface_per_n"},
             {"surface_per_ball"},
             {"exact_match"}},
            {}};
    bool all = true;
    for (const auto& r : s.rows) {
      if (r.exact_match) all = all && *r.exact_match;
      t.add({static_cast<std::int64_t>(r.n), r.ball, r.log_lhs, r.bulk, r.surface, r.predicted, r.unexplained,
             opt_cell(r.surface_per_n), r.surface_per_ball,
             r.exact_match ? Cell(*r.exact_match) : Cell(std::string())});
    }
    rep.tables.push_back(std::move(t));
    rep.notes.push_back("tree entropy of E^(d-1) x omega: " + format_double(s.entropy));
    if (!all) failure = "tree surface partition product disagrees with the tree count";
  }
  return rep;
}

// ---- oracle ----------------------------------------------------------------

struct OracleArgs {
  std::string kind = "grid";
  std::vector<std::string> axes;
  std::string box;
  std::string tree = "full:2";
  std::size_t depth = 1;
  std::string omega = "golden_mean";
  std::uint64_t p = 2;
  std::uint64_t x = 4;
};

Report run_oracle(const OracleArgs& a, const Globals& g, std::string& failure) {
  Report rep{"oracle", {}, {}};
  Table t{"oracle", {{"kind"}, {"instance"}, {"brute_force"}, {"structured"}, {"agree"}}, {}};
  BigInt brute, structured;
  std::string instance;
  if (a.kind == "grid") {
    const auto named = resolve(a.axes);
    const auto box = parse_box(a.box.empty() ? "2x2" : a.box);
    const GridAxialSpec spec(axes_for(named, box.dims.size()));
    brute = brute_grid(spec, box, enum_budget(g));
    structured = count_box(spec, box, CountPath::Auto, grid_budget(g)).exact_value();
    instance = box_text(box);
  } else if (a.kind == "tree") {
    const auto tree = parse_tree(a.tree);
    const auto axes = axes_for(resolve(a.axes), tree.d());
    brute = brute_tree(tree, axes, a.depth, enum_budget(g));
    structured = *count_ball_cayley(tree, axes, a.depth, CountMode::Exact).exact_total;
    instance = a.tree + " depth " + std::to_string(a.depth);
  } else if (a.kind == "mis") {
    const MultiplicativeSystem sys{parse_matrix_ref(a.omega).matrix, a.p};
    brute = brute_mis(sys, a.x, enum_budget(g));
    structured = count_mis(sys, a.x, CountMode::Exact).exact_value();
    instance = a.omega + " p=" + std::to_string(a.p) + " x=" + std::to_string(a.x);
  } else {
    throw ConfigError("unknown oracle kind '" + a.kind + "' (expected grid, tree or mis)");
  }
  t.add({a.kind, instance, big(brute), big(structured), brute == structured});
  rep.tables.push_back(std::move(t));
  if (brute != structured) failure = "structured count disagrees with brute force";
  return rep;
}

// ---- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string family = "thm21";
  std::string m = "1..3";
  std::string n = "1..4";
  std::string lattice = "grid";
  unsigned verify_k = 2;
};

Report run_sweep(const SweepArgs& a, const Globals& g, std::string& failure) {
  Report rep{"sweep", {}, {}};
  if (a.family != "thm21") throw ConfigError("unknown family '" + a.family + "' (expected thm21)");
  if (a.lattice != "grid" && a.lattice != "tree") throw ConfigError("--lattice must be grid or tree");
  const auto [m_lo, m_hi] = parse_range(a.m);
  const auto [n_lo, n_hi] = parse_range(a.n);
  if (m_lo == 0 || n_lo == 0) throw ConfigError("sweep ranges start at 1");
  Table t{"sweep", {{"m"}, {"n"}, {"entropy", true}, {"verified"}}, {}};
  for (auto m = m_lo; m <= m_hi; ++m) {
    for (auto n = n_lo; n <= n_hi; ++n) {
      const auto mu = static_cast<unsigned>(m);
      const auto nu = static_cast<unsigned>(n);
      bool ok = true;
      double value = 0.0;
      if (a.lattice == "grid") {
        value = entropy_closed_thm21(mu, nu);
        for (unsigned k = 1; k <= a.verify_k && ok; ++k) ok = verify_thm21_count(mu, nu, k, grid_budget(g));
      } else {
        value = thm21_tree_entropy(mu, nu);
        const auto spec = thm21_tree_spec(mu, nu);
        const std::size_t depth = a.verify_k + 1;
        const auto dp = ball_exact_totals(spec, depth);
        for (std::size_t k = 0; k <= depth && ok; ++k) ok = dp[k] == thm21_tree_recurrence_count(mu, nu, k);
      }
      if (!ok && failure.empty()) failure = "verification failed at m=" + std::to_string(m) + " n=" + std::to_string(n);
      t.add({static_cast<std::int64_t>(m), static_cast<std::int64_t>(n), value, ok});
    }
  }
  rep.tables.push_back(std::move(t));
  return rep;
}

// --config: {"command": "...", "options": {...}, <global flags>...} becomes argv.
void append_flags(const nlohmann::json& obj, std::vector<std::string>& out) {
  for (const auto& [key, value] : obj.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
    } else if (value.is_array()) {
      out.push_back(flag);
      for (const auto& v : value) out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    } else if (value.is_string()) {
      out.push_back(flag);
      out.push_back(value.get<std::string>());
    } else if (value.is_object()) {
      out.push_back(flag);
      out.push_back(value.dump());
    } else {
      out.push_back(flag);
      out.push_back(value.dump());
    }
  }
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] != "--config") {
      out.push_back(args[i]);
      continue;
    }
    if (i + 1 >= args.size()) throw ConfigError("--config needs a file path");
    std::ifstream in(args[++i]);
    if (!in) throw ConfigError("cannot open config file '" + args[i] + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("malformed config file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("command") || !j["command"].is_string())
      throw ConfigError("config file needs a string \"command\"");
    std::vector<std::string> expanded;
    nlohmann::json globals = j;
    globals.erase("command");
    globals.erase("options");
    append_flags(globals, expanded);
    expanded.push_back(j["command"].get<std::string>());
    if (j.contains("options")) append_flags(j["options"], expanded);
    out.insert(out.end(), expanded.begin(), expanded.end());
  }
  return out;
}

std::string now_utc() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pattern counts and entropies of axial products of one-dimensional SFTs", "axial-entropy"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--output", g.output, "Write the report to this file instead of stdout");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"csv", "json", "human"}));
  app.add_option("--log-base", g.log_base, "Entropy unit: natural log or bits")->check(CLI::IsMember({"e", "2"}));
  app.add_option("--budget", g.budget, "Enumeration/search node budget for exact paths");
  app.add_flag("--timestamps", g.timestamps, "Stamp reports with the generation time");
  app.footer(
      "Matrix references: full:k identity:k cyclic:k golden_mean thm21:m,n, inline JSON "
      "{\"size\":k,\"rows\":[[...]]}, or @file.\n"
      "Exit status: 0 success, 1 computational failure (budget, non-convergence, failed verification), "
      "2 configuration error.");

  GridArgs grid;
  auto* gc = app.add_subcommand("grid", "Axial products on N^d: box counts, strip entropy estimates");
  gc->add_option("--axes", grid.axes, "Axis matrices (one is repeated over all axes)")->required();
  gc->add_option("--d", grid.d, "Dimension (default: number of axes, or 2)");
  gc->add_option("--box", grid.boxes, "Boxes n1xn2[x...]; table columns: box,count,log_count");
  gc->add_flag("--exact", grid.exact, "Count by backtracking");
  gc->add_flag("--transfer", grid.transfer, "Count by column-transfer matrices (2-D)");
  gc->add_option("--estimate", grid.estimate, "Strip widths 1..W; columns: width,estimate");
  gc->add_option("--transfer-axis", grid.transfer_axis, "Axis along which strips are iterated");
  gc->add_option("--full-extension", grid.full_extension, "Treat the axes as the inner product of E^r x inner");
  gc->add_option("--verify-thm21", grid.verify_thm21, "Check the kn x k count identity for k = 1..K");
  gc->add_option("--report", g.format, "Alias of --format")->check(CLI::IsMember({"csv", "json", "human"}));

  TreeArgs tree;
  auto* tc = app.add_subcommand("tree", "Axial products on the d-tree: ball counts, series, partition identity");
  tc->add_option("--d", tree.d, "Arity of the tree");
  tc->add_option("--axes", tree.axes, "Axis matrices of the inner product")->required();
  tc->add_option("--depth", tree.depth, "Depth of the DP estimate; columns: depth,estimate");
  tc->add_flag("--series", tree.series, "Evaluate the full-extension series (with --r)");
  tc->add_option("--r", tree.r, "Number of full-shift axes placed in front of the inner axes");
  tc->add_flag("--verify-partition", tree.verify_partition, "Exact partition identity; columns: n,ball_count,product,ok");
  tc->add_option("--partition-depth", tree.partition_depth, "Largest n for --verify-partition");
  tc->add_flag("--classify-gap", tree.classify_gap, "Classify an isotropic binary-tree product");
  tc->add_option("--tail-tol", tree.tail_tol, "Series tail tolerance");

  CayleyArgs cay;
  auto* cc = app.add_subcommand("cayley", "Markov-Cayley trees: counts, golden-mean closed forms, probes");
  cc->add_option("--tree", cay.tree, "gm, g1, full:d, or an adjacency matrix reference");
  cc->add_option("--adjacency", cay.tree, "Adjacency matrix reference (same as --tree)");
  cc->add_option("--axes", cay.axes, "Axis matrices, or the X values for closed forms and probes")->required();
  cc->add_option("--depth", cay.depth, "Depth (counts 10, probes 30, partitions 8, g1 2000)");
  cc->add_option("--closed-form", cay.closed_form, "gm: E x X and X x E on the golden-mean tree; g1: sequence");
  cc->add_flag("--verify-partitions", cay.verify_partitions, "Exact golden-tree partition identities");
  cc->add_flag("--probe-strict", cay.probe_strict, "Margins of h(E x X), h(X x E) over h(X)");
  cc->add_option("--levels", cay.levels, "Level and ball sizes up to N");
  cc->add_option("--tail-tol", cay.tail_tol, "Series tail tolerance");

  MisArgs mis;
  auto* mc = app.add_subcommand("mis", "Multiplicative integer systems: counts, entropy, residuals");
  mc->add_option("--omega", mis.omega, "The SFT along geometric chains");
  mc->add_option("--p", mis.p, "Multiplicative step");
  mc->add_option("--x", mis.x, "x values: 16 | 4,8,16 | p^n+k,n=a..b");
  mc->add_flag("--residuals", mis.residuals, "Columns: x,n,log_count,residual,predicted,difference,residual_per_n");
  mc->add_flag("--tree-surface", mis.tree_surface, "Surface correction of E^(d-1) x omega on the d-tree");
  mc->add_option("--d", mis.d, "Tree arity for --tree-surface");
  mc->add_option("--n-max", mis.n_max, "Largest depth for --tree-surface");
  mc->add_option("--tail-tol", mis.tail_tol, "Series tail tolerance");

  OracleArgs orc;
  auto* oc = app.add_subcommand("oracle", "Brute-force spot check against the structured counters");
  oc->add_option("--kind", orc.kind, "grid, tree or mis");
  oc->add_option("--axes", orc.axes, "Axis matrices (grid, tree)");
  oc->add_option("--box", orc.box, "Box for grid");
  oc->add_option("--tree", orc.tree, "Tree for tree: gm, g1, full:d");
  oc->add_option("--depth", orc.depth, "Ball depth for tree");
  oc->add_option("--omega", orc.omega, "Omega for mis");
  oc->add_option("--p", orc.p, "Step for mis");
  oc->add_option("--x", orc.x, "Length for mis");

  SweepArgs sw;
  auto* sc = app.add_subcommand("sweep", "Achieved entropies of the thm21 family with exact verification");
  sc->add_option("--family", sw.family, "Family (thm21)");
  sc->add_option("--m", sw.m, "Range a..b of m");
  sc->add_option("--n", sw.n, "Range a..b of n");
  sc->add_option("--lattice", sw.lattice, "grid: m log 2 / n; tree: m log 2 / (2n). Columns: m,n,entropy,verified");
  sc->add_option("--verify-k", sw.verify_k, "Largest k (grid) or depth - 1 (tree) for the exact check");

  try {
    auto args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  }

  EmitOptions opts;
  opts.format = g.format == "json" ? Format::Json : g.format == "human" ? Format::Human : Format::Csv;
  opts.log_base2 = g.log_base == "2";
  if (g.timestamps) opts.timestamp = now_utc();

  Report rep;
  std::string failure;
  int status = kOk;
  try {
    if (gc->parsed()) rep = run_grid(grid, g, failure);
    else if (tc->parsed()) rep = run_tree(tree, g, failure);
    else if (cc->parsed()) rep = run_cayley(cay, g, failure);
    else if (mc->parsed()) rep = run_mis(mis, g, failure);
    else if (oc->parsed()) rep = run_oracle(orc, g, failure);
    else rep = run_sweep(sw, g, failure);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const PreconditionError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kComputationFailed;
  } catch (const NonConvergence& e) {
    err << "no convergence: " << e.what() << " (last estimate " << format_double(e.last_estimate()) << ")\n";
    return kComputationFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kComputationFailed;
  }
  if (!failure.empty()) {
    err << "verification failed: " << failure << '\n';
    status = kComputationFailed;
  }

  if (g.output.empty()) {
    emit(rep, opts, out);
  } else {
    std::ofstream file(g.output);
    if (!file) {
      err << "configuration error: cannot write '" << g.output << "'\n";
      return kConfigError;
    }
    emit(rep, opts, file);
  }
  return status;
}

}  // namespace axent::cli
