#include "axent/grid_axial.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <unordered_map>

#include "axent/errors.hpp"
#include "axent/sft1d.hpp"

namespace axent {

GridAxialSpec::GridAxialSpec(std::size_t alphabet, std::vector<TransitionMatrix> axes)
    : alphabet_(alphabet), axes_(std::move(axes)) {
  for (const auto& a : axes_) {
    if (a.size() != alphabet_) throw ConfigError("grid spec: axes must share a common alphabet");
  }
}

GridAxialSpec::GridAxialSpec(std::vector<TransitionMatrix> axes)
    : alphabet_(axes.empty() ? 0 : axes.front().size()), axes_(std::move(axes)) {
  if (axes_.empty()) throw ConfigError("grid spec: at least one axis required to infer the alphabet");
  for (const auto& a : axes_)
    if (a.size() != alphabet_) throw ConfigError("grid spec: axes must share a common alphabet");
}

GridAxialSpec GridAxialSpec::isotropic(const TransitionMatrix& a, std::size_t d) {
  return GridAxialSpec(a.size(), std::vector<TransitionMatrix>(d, a));
}

bool GridAxialSpec::isotropic() const {
  for (const auto& a : axes_)
    if (!(a == axes_.front())) return false;
  return true;
}

std::size_t Box::cells() const {
  std::size_t c = 1;
  for (auto n : dims) c *= n;
  return c;
}

namespace {

void check_box(const GridAxialSpec& spec, const Box& box) {
  if (box.dims.size() != spec.d()) {
    throw ConfigError("box has " + std::to_string(box.dims.size()) + " dimensions, spec has " +
                      std::to_string(spec.d()));
  }
  for (auto n : box.dims)
    if (n == 0) throw ConfigError("box dimensions must be positive");
}

LogCount count_backtrack(const GridAxialSpec& spec, const Box& box, const GridBudget& budget) {
  const std::size_t cells = box.cells();
  if (cells > budget.max_cells) {
    throw BudgetExceeded("box has " + std::to_string(cells) + " cells, backtracking budget is " +
                         std::to_string(budget.max_cells) + "; use the transfer path (2-D) or a smaller box");
  }
  const auto lc = LineConstraints::from_axes(spec.alphabet(), spec.axes());
  const std::size_t d = spec.d();
  const std::size_t k = spec.alphabet();

  std::vector<std::size_t> stride(d, 1);
  for (std::size_t i = d; i-- > 1;) stride[i - 1] = stride[i] * box.dims[i];

  // preds[c] lists (axis, predecessor cell) pairs.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> preds(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t coord = (c / stride[i]) % box.dims[i];
      if (coord > 0) preds[c].emplace_back(i, c - stride[i]);
    }
  }

  std::vector<std::uint8_t> label(cells, 0);
  std::uint64_t nodes = 0;
  auto fits = [&](std::size_t c, std::size_t s) {
    if (!lc.symbols[s]) return false;
    for (const auto& [axis, p] : preds[c])
      if (!lc.axes[axis](label[p], s)) return false;
    return true;
  };

  std::function<BigInt(std::size_t)> search = [&](std::size_t c) -> BigInt {
    if (++nodes > budget.max_nodes) {
      throw BudgetExceeded("backtracking exceeded " + std::to_string(budget.max_nodes) +
                           " search nodes; use the transfer path (2-D) or a smaller box");
    }
    if (c + 1 == cells) {
      BigInt leaves = 0;
      for (std::size_t s = 0; s < k; ++s)
        if (fits(c, s)) leaves += 1;
      return leaves;
    }
    BigInt total = 0;
    for (std::size_t s = 0; s < k; ++s) {
      if (!fits(c, s)) continue;
      label[c] = static_cast<std::uint8_t>(s);
      total += search(c + 1);
    }
    return total;
  };
  return LogCount::exact(search(0));
}

LogCount count_transfer(const GridAxialSpec& spec, const Box& box, const GridBudget& budget) {
  if (spec.d() != 2) throw ConfigError("transfer path requires a 2-D spec");
  const auto t = build_column_transfer(spec, box.dims[1], 0, budget);
  std::vector<BigInt> v(t.columns.size(), 1), w(t.columns.size());
  for (std::size_t step = 1; step < box.dims[0]; ++step) {
    std::fill(w.begin(), w.end(), BigInt(0));
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (v[c] == 0) continue;
      for (auto nxt : t.graph.successors[c]) w[nxt] += v[c];
    }
    v.swap(w);
  }
  BigInt total = 0;
  for (const auto& x : v) total += x;
  return LogCount::exact(std::move(total));
}

}  // namespace

ColumnTransfer build_column_transfer(const GridAxialSpec& spec, std::size_t width, std::size_t transfer_axis,
                                     const GridBudget& budget) {
  if (spec.d() != 2) throw ConfigError("column transfer requires a 2-D spec");
  if (transfer_axis > 1) throw ConfigError("transfer axis must be 0 or 1");
  if (width == 0) throw ConfigError("strip width must be positive");
  if (width > budget.max_width) {
    throw BudgetExceeded("strip width " + std::to_string(width) + " exceeds the width budget " +
                         std::to_string(budget.max_width));
  }
  const auto lc = LineConstraints::from_axes(spec.alphabet(), spec.axes());
  const TransitionMatrix& across = lc.axes[transfer_axis];
  const TransitionMatrix& along = lc.axes[1 - transfer_axis];
  const std::size_t k = spec.alphabet();

  ColumnTransfer t;
  t.width = width;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  auto encode = [k](const std::vector<std::uint8_t>& col) {
    std::uint64_t code = 0;
    for (auto it = col.rbegin(); it != col.rend(); ++it) code = code * k + *it;
    return code;
  };

  std::vector<std::uint8_t> col(width);
  std::function<void(std::size_t)> enumerate = [&](std::size_t j) {
    if (j == width) {
      if (t.columns.size() >= budget.max_columns) {
        throw BudgetExceeded("more than " + std::to_string(budget.max_columns) + " admissible columns at width " +
                             std::to_string(width));
      }
      index.emplace(encode(col), static_cast<std::uint32_t>(t.columns.size()));
      t.columns.push_back(col);
      return;
    }
    for (std::size_t s = 0; s < k; ++s) {
      if (!lc.symbols[s]) continue;
      if (j > 0 && !along(col[j - 1], s)) continue;
      col[j] = static_cast<std::uint8_t>(s);
      enumerate(j + 1);
    }
  };
  enumerate(0);

  t.graph.successors.resize(t.columns.size());
  std::size_t edges = 0;
  std::vector<std::uint8_t> next(width);
  for (std::uint32_t c = 0; c < t.columns.size(); ++c) {
    const auto& cur = t.columns[c];
    std::function<void(std::size_t)> extend = [&](std::size_t j) {
      if (j == width) {
        if (++edges > budget.max_edges) {
          throw BudgetExceeded("column transfer exceeds " + std::to_string(budget.max_edges) + " edges");
        }
        t.graph.successors[c].push_back(index.at(encode(next)));
        return;
      }
      for (std::size_t s = 0; s < k; ++s) {
        if (!lc.symbols[s] || !across(cur[j], s)) continue;
        if (j > 0 && !along(next[j - 1], s)) continue;
        next[j] = static_cast<std::uint8_t>(s);
        extend(j + 1);
      }
    };
    extend(0);
  }
  return t;
}

LogCount count_box(const GridAxialSpec& spec, const Box& box, CountPath path, const GridBudget& budget) {
  check_box(spec, box);
  if (path == CountPath::Auto) {
    path = (spec.d() == 2 && box.dims[1] <= budget.max_width) ? CountPath::Transfer : CountPath::Backtrack;
  }
  if (path == CountPath::Transfer) return count_transfer(spec, box, budget);
  return count_backtrack(spec, box, budget);
}

TransitionMatrix thm21_matrix(unsigned m, unsigned n) {
  if (m == 0 || n == 0) throw ConfigError("thm21 matrix needs m, n >= 1");
  if (m > 12 || n > 4096) throw BudgetExceeded("thm21 matrix size 2^m + n - 1 exceeds the matrix budget");
  const std::size_t free_states = std::size_t{1} << m;
  if (n == 1) return TransitionMatrix::full(free_states);

  const std::size_t size = free_states + n - 1;
  TransitionMatrix a(size);
  for (std::size_t i = 0; i < free_states; ++i) a.set(i, free_states);
  for (std::size_t i = free_states; i + 1 < size; ++i) a.set(i, i + 1);
  for (std::size_t j = 0; j < free_states; ++j) a.set(size - 1, j);
  return a;
}

std::optional<std::pair<unsigned, unsigned>> match_thm21(const TransitionMatrix& a) {
  for (unsigned m = 1; m <= 12 && (std::size_t{1} << m) <= a.size(); ++m) {
    const unsigned n = static_cast<unsigned>(a.size() - (std::size_t{1} << m) + 1);
    if (thm21_matrix(m, n) == a) return std::make_pair(m, n);
  }
  return std::nullopt;
}

bool verify_thm21_count(unsigned m, unsigned n, unsigned k, const GridBudget& budget) {
  const auto spec = GridAxialSpec::isotropic(thm21_matrix(m, n), 2);
  const LogCount c = count_box(spec, Box{{std::size_t{k} * n, k}}, CountPath::Auto, budget);
  const BigInt expected = BigInt(n) * pow_big(BigInt(1) << m, std::uint64_t{k} * k);
  return c.exact_value() == expected;
}

double entropy_closed_thm21(unsigned m, unsigned n) { return m * std::log(2.0) / n; }

EntropyReport entropy_estimate_grid(const GridAxialSpec& spec, std::size_t max_width, std::size_t transfer_axis,
                                    const GridBudget& budget, double tol) {
  if (spec.d() != 2) throw ConfigError("strip estimator supports 2-D specs only");
  EntropyReport r;
  r.quantity = "grid strip entropy log(lambda(T_w))/w";
  r.first_index = 1;
  for (std::size_t w = 1; w <= max_width; ++w) {
    const auto t = build_column_transfer(spec, w, transfer_axis, budget);
    const double lambda = perron_value(t.graph, tol);
    r.estimates.push_back(lambda > 0 ? std::log(lambda) / static_cast<double>(w)
                                     : -std::numeric_limits<double>::infinity());
  }
  if (spec.isotropic()) {
    if (auto mn = match_thm21(spec.axes().front())) {
      r.closed_form = entropy_closed_thm21(mn->first, mn->second);
      r.notes.push_back("thm21 family m=" + std::to_string(mn->first) + " n=" + std::to_string(mn->second));
    }
  }
  if (!r.estimates.empty()) r.value = r.estimates.back();
  attach_sequence_diagnostics(r);
  return r;
}

EntropyReport full_extension_entropy_grid(const GridAxialSpec& inner, std::size_t r, std::size_t max_width,
                                          double tol) {
  if (r == 0) throw ConfigError("full extension needs r >= 1");
  EntropyReport rep;
  rep.quantity = "entropy of E^r (x) inner, equal to the inner entropy";
  rep.notes.push_back("r=" + std::to_string(r) + " full axes, inner dimension " + std::to_string(inner.d()));
  if (inner.d() == 0) {
    rep.closed_form = std::log(static_cast<double>(inner.alphabet()));
    rep.value = rep.closed_form;
    return rep;
  }
  if (inner.d() == 1) {
    rep.closed_form = entropy(inner.axes().front(), tol);
    rep.value = rep.closed_form;
    rep.tail_bound = tol;
    return rep;
  }
  if (inner.d() == 2) {
    auto est = entropy_estimate_grid(inner, max_width, 0, GridBudget{}, tol);
    est.quantity = rep.quantity;
    est.notes.insert(est.notes.begin(), rep.notes.begin(), rep.notes.end());
    return est;
  }
  throw ConfigError("full extension entropy: inner products of dimension > 2 have no estimator");
}

}  // namespace axent
