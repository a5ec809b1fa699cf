#include "axent/oracle.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <tuple>

#include "axent/errors.hpp"

namespace axent {

namespace {

// True when some walk of `steps` edges starts at s. With steps = size, such a
// walk revisits a symbol, so an infinite walk exists.
bool has_walk(const TransitionMatrix& a, std::size_t s, std::size_t steps) {
  std::vector<bool> cur(a.size(), false);
  cur[s] = true;
  for (std::size_t n = 0; n < steps; ++n) {
    std::vector<bool> next(a.size(), false);
    bool any = false;
    for (std::size_t u = 0; u < a.size(); ++u) {
      if (!cur[u]) continue;
      for (std::size_t v = 0; v < a.size(); ++v)
        if (a(u, v)) next[v] = any = true;
    }
    if (!any) return false;
    cur = std::move(next);
  }
  return true;
}

bool extendable(const TransitionMatrix& a, std::size_t s) { return has_walk(a, s, a.size()); }

void check_budget(std::size_t k, std::size_t cells, const EnumerationBudget& budget) {
  const double total = std::pow(static_cast<double>(k), static_cast<double>(cells));
  if (cells > budget.max_cells || total > static_cast<double>(budget.max_assignments)) {
    throw BudgetExceeded("enumeration of " + std::to_string(k) + "^" + std::to_string(cells) +
                         " labelings exceeds the oracle budget");
  }
}

// Odometer over all labelings; calls ok(labels) and counts the accepted ones.
template <class F>
BigInt enumerate(std::size_t k, std::size_t cells, F ok) {
  BigInt count = 0;
  if (k == 0) return count;
  std::vector<std::size_t> labels(cells, 0);
  while (true) {
    if (ok(labels)) ++count;
    std::size_t i = 0;
    while (i < cells && ++labels[i] == k) labels[i++] = 0;
    if (i == cells) break;
  }
  return count;
}

}  // namespace

BigInt brute_grid(const GridAxialSpec& spec, const Box& box, const EnumerationBudget& budget) {
  const std::size_t d = spec.d();
  if (box.dims.size() != d) throw ConfigError("box dimension does not match the number of axes");
  const std::size_t cells = box.cells();
  const std::size_t k = spec.alphabet();
  check_budget(k, cells, budget);

  std::vector<std::size_t> stride(d, 1);
  for (std::size_t i = d; i-- > 1;) stride[i - 1] = stride[i] * box.dims[i];

  std::vector<std::vector<bool>> ext(d, std::vector<bool>(k));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t s = 0; s < k; ++s) ext[i][s] = extendable(spec.axes()[i], s);

  return enumerate(k, cells, [&](const std::vector<std::size_t>& x) {
    for (std::size_t c = 0; c < cells; ++c) {
      for (std::size_t i = 0; i < d; ++i) {
        if (!ext[i][x[c]]) return false;
        const std::size_t coord = (c / stride[i]) % box.dims[i];
        if (coord + 1 < box.dims[i] && !spec.axes()[i](x[c], x[c + stride[i]])) return false;
      }
    }
    return true;
  });
}

BigInt brute_tree(const MarkovCayleyTree& tree, const std::vector<TransitionMatrix>& axes, std::size_t depth,
                  const EnumerationBudget& budget) {
  const std::size_t d = tree.d();
  if (axes.size() != d || d == 0) throw ConfigError("one axis per generator required");
  const std::size_t k = axes.front().size();
  const auto& m = tree.adjacency;

  // Explicit vertex list: parent, incoming generator (d for the root), depth.
  struct Vertex {
    std::size_t parent, gen, depth;
  };
  std::vector<Vertex> verts{{0, d, 0}};
  for (std::size_t v = 0; v < verts.size(); ++v) {
    if (verts[v].depth == depth) continue;
    for (std::size_t j = 0; j < d; ++j)
      if (verts[v].gen == d || m(verts[v].gen, j)) verts.push_back({v, j, verts[v].depth + 1});
    if (verts.size() > budget.max_cells) check_budget(k, verts.size(), budget);
  }
  check_budget(k, verts.size(), budget);

  auto children_of = [&](std::size_t gen) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < d; ++j)
      if (gen == d || m(gen, j)) out.push_back(j);
    return out;
  };
  auto edge_ok = [&](std::size_t j, std::size_t s, std::size_t t) { return axes[j](s, t) && extendable(axes[j], t); };

  // Can a vertex of incoming generator `gen` labeled s be continued for `steps` more levels?
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, bool> memo;
  std::function<bool(std::size_t, std::size_t, std::size_t)> grows = [&](std::size_t gen, std::size_t s,
                                                                         std::size_t steps) {
    if (steps == 0) return true;
    const auto key = std::make_tuple(gen, s, steps);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool ok = true;
    for (auto j : children_of(gen)) {
      bool any = false;
      for (std::size_t t = 0; t < k && !any; ++t) any = edge_ok(j, s, t) && grows(j, t, steps - 1);
      if (!any) {
        ok = false;
        break;
      }
    }
    memo[key] = ok;
    return ok;
  };
  const std::size_t horizon = (d + 1) * k + 1;

  return enumerate(k, verts.size(), [&](const std::vector<std::size_t>& x) {
    for (std::size_t v = 1; v < verts.size(); ++v)
      if (!edge_ok(verts[v].gen, x[verts[v].parent], x[v])) return false;
    for (std::size_t v = 0; v < verts.size(); ++v)
      if (verts[v].depth == depth && !grows(verts[v].gen, x[v], horizon)) return false;
    return true;
  });
}

BigInt brute_mis(const MultiplicativeSystem& sys, std::uint64_t x, const EnumerationBudget& budget) {
  if (sys.p < 2) throw ConfigError("multiplicative step p must be at least 2");
  const std::size_t k = sys.omega.size();
  check_budget(k, x, budget);
  std::vector<bool> ext(k);
  for (std::size_t s = 0; s < k; ++s) ext[s] = extendable(sys.omega, s);
  // Position j (1-based) is stored at index j - 1.
  return enumerate(k, x, [&](const std::vector<std::size_t>& w) {
    for (std::uint64_t j = 1; j <= x; ++j) {
      if (!ext[w[j - 1]]) return false;
      if (j * sys.p <= x && !sys.omega(w[j - 1], w[j * sys.p - 1])) return false;
    }
    return true;
  });
}

}  // namespace axent
