#include "axent/sparse_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "axent/errors.hpp"

namespace axent {

std::size_t SparseGraph::edges() const {
  std::size_t e = 0;
  for (const auto& s : successors) e += s.size();
  return e;
}

SparseGraph SparseGraph::from_matrix(const TransitionMatrix& m) {
  SparseGraph g;
  g.successors.resize(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m(i, j)) g.successors[i].push_back(static_cast<std::uint32_t>(j));
  return g;
}

std::vector<Component> strongly_connected_components(const SparseGraph& g) {
  // Iterative Tarjan; emits components sinks-first, reversed at the end.
  const std::size_t n = g.size();
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::vector<Component> out;
  std::uint32_t counter = 0;

  struct Frame {
    std::uint32_t v;
    std::size_t next;
  };
  std::vector<Frame> call;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      const auto& succ = g.successors[f.v];
      if (f.next < succ.size()) {
        const std::uint32_t w = succ[f.next++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::uint32_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        Component c;
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          c.push_back(w);
        } while (w != v);
        std::sort(c.begin(), c.end());
        out.push_back(std::move(c));
      }
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool is_nontrivial(const SparseGraph& g, const Component& c) {
  if (c.size() > 1) return true;
  const auto& succ = g.successors[c.front()];
  return std::find(succ.begin(), succ.end(), c.front()) != succ.end();
}

ComponentPerron component_perron(const SparseGraph& g, const Component& c, double tol, int max_iter) {
  const std::size_t m = c.size();
  std::unordered_map<std::uint32_t, std::uint32_t> local;
  local.reserve(m * 2);
  for (std::uint32_t i = 0; i < m; ++i) local.emplace(c[i], i);

  std::vector<std::vector<std::uint32_t>> adj(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    for (auto w : g.successors[c[i]]) {
      auto it = local.find(w);
      if (it != local.end()) adj[i].push_back(it->second);
    }
  }

  const double eps_floor = 16.0 * std::numeric_limits<double>::epsilon();
  const double eff_tol = std::max(tol, eps_floor);

  std::vector<double> x(m, 1.0), y(m);
  double estimate = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    double ymax = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double s = x[i];
      for (auto j : adj[i]) s += x[j];
      y[i] = s;
      const double r = s / x[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      ymax = std::max(ymax, s);
    }
    estimate = 0.5 * (lo + hi) - 1.0;
    for (std::size_t i = 0; i < m; ++i) x[i] = y[i] / ymax;
    if (hi - lo <= eff_tol * std::max(estimate, 1.0)) {
      return ComponentPerron{estimate, std::move(x), it};
    }
  }
  throw NonConvergence("power iteration did not converge within " + std::to_string(max_iter) +
                           " iterations",
                       estimate, x);
}

double perron_value(const SparseGraph& g, double tol, int max_iter) {
  double best = 0.0;
  for (const auto& c : strongly_connected_components(g)) {
    if (!is_nontrivial(g, c)) continue;
    best = std::max(best, component_perron(g, c, tol, max_iter).value);
  }
  return best;
}

}  // namespace axent
