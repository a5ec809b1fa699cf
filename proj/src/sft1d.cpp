#include "axent/sft1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include <Eigen/Dense>

#include "axent/errors.hpp"
#include "axent/sparse_graph.hpp"

namespace axent {

std::vector<bool> essential_symbols(const TransitionMatrix& a) {
  const std::size_t k = a.size();
  std::vector<bool> alive(k, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (!alive[i]) continue;
      bool has_successor = false;
      for (std::size_t j = 0; j < k && !has_successor; ++j) has_successor = alive[j] && a(i, j);
      if (!has_successor) {
        alive[i] = false;
        changed = true;
      }
    }
  }
  return alive;
}

TransitionMatrix essentialize(const TransitionMatrix& a) {
  const auto alive = essential_symbols(a);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (alive[i]) keep.push_back(i);
  if (keep.size() == a.size()) return a;
  return a.submatrix(keep);
}

namespace {

bool use_exact(CountMode mode, std::uint64_t n) {
  switch (mode) {
    case CountMode::Exact: return true;
    case CountMode::Log: return false;
    case CountMode::Auto: return n <= kExactWordLengthLimit;
  }
  return false;
}

}  // namespace

std::vector<LogCount> word_count_sequence(const TransitionMatrix& a, std::uint64_t n_max, CountMode mode) {
  std::vector<LogCount> out;
  out.reserve(n_max);
  const TransitionMatrix e = essentialize(a);
  const std::size_t k = e.size();
  if (k == 0) {
    out.assign(n_max, LogCount::zero());
    return out;
  }

  if (use_exact(mode, n_max)) {
    std::vector<BigInt> v(k, 1), w(k);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      if (n > 1) {
        for (std::size_t i = 0; i < k; ++i) {
          BigInt s = 0;
          for (std::size_t j = 0; j < k; ++j)
            if (e(i, j)) s += v[j];
          w[i] = std::move(s);
        }
        v.swap(w);
      }
      out.push_back(LogCount::exact(std::accumulate(v.begin(), v.end(), BigInt(0))));
    }
    return out;
  }

  // v holds (A^(n-1) 1) / exp(scale); essential rows keep every entry >= 1 before scaling.
  std::vector<double> v(k, 1.0), w(k);
  double scale = 0.0;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    if (n > 1) {
      double mx = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < k; ++j)
          if (e(i, j)) s += v[j];
        w[i] = s;
        mx = std::max(mx, s);
      }
      for (std::size_t i = 0; i < k; ++i) v[i] = w[i] / mx;
      scale += std::log(mx);
    }
    out.push_back(LogCount::from_log(scale + std::log(std::accumulate(v.begin(), v.end(), 0.0))));
  }
  return out;
}

LogCount count_words(const TransitionMatrix& a, std::uint64_t n, CountMode mode) {
  if (n == 0) throw std::invalid_argument("count_words: word length must be positive");
  if (mode == CountMode::Auto) mode = n <= kExactWordLengthLimit ? CountMode::Exact : CountMode::Log;
  return word_count_sequence(a, n, mode).back();
}

std::vector<double> log_power_sums(const TransitionMatrix& a, std::uint64_t i_max) {
  const std::size_t k = a.size();
  std::vector<double> out;
  out.reserve(i_max);
  std::vector<double> v(k, 1.0), w(k);
  double scale = 0.0;
  for (std::uint64_t i = 1; i <= i_max; ++i) {
    double mx = 0.0;
    for (std::size_t r = 0; r < k; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < k; ++c)
        if (a(r, c)) s += v[c];
      w[r] = s;
      mx = std::max(mx, s);
    }
    if (mx == 0.0) {
      out.resize(i_max, -std::numeric_limits<double>::infinity());
      return out;
    }
    for (std::size_t r = 0; r < k; ++r) v[r] = w[r] / mx;
    scale += std::log(mx);
    out.push_back(scale + std::log(std::accumulate(v.begin(), v.end(), 0.0)));
  }
  return out;
}

namespace {

// Extends a Perron vector living on `comp` to the vertices in `reach` by solving
// (lambda I - A_RR) v_R = A_RC v_C. All of `reach` lies in components with a
// strictly smaller Perron value, so the solution is nonnegative.
std::vector<double> extend_vector(const TransitionMatrix& a, const Component& comp,
                                  const std::vector<double>& comp_vec, const std::vector<std::uint32_t>& reach,
                                  double lambda) {
  std::vector<double> full(a.size(), 0.0);
  for (std::size_t i = 0; i < comp.size(); ++i) full[comp[i]] = comp_vec[i];
  if (reach.empty()) return full;

  const auto r = static_cast<Eigen::Index>(reach.size());
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(r, r) * lambda;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(r);
  for (Eigen::Index p = 0; p < r; ++p) {
    for (Eigen::Index q = 0; q < r; ++q)
      if (a(reach[p], reach[q])) lhs(p, q) -= 1.0;
    for (std::size_t c = 0; c < comp.size(); ++c)
      if (a(reach[p], comp[c])) rhs(p) += comp_vec[c];
  }
  const Eigen::VectorXd sol = lhs.partialPivLu().solve(rhs);
  for (Eigen::Index p = 0; p < r; ++p) full[reach[p]] = std::max(0.0, sol(p));
  return full;
}

std::vector<std::uint32_t> vertices_reaching(const SparseGraph& reversed, const Component& target) {
  std::vector<bool> seen(reversed.size(), false);
  std::queue<std::uint32_t> q;
  for (auto v : target) seen[v] = true;
  for (auto v : target) q.push(v);
  std::vector<std::uint32_t> out;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    for (auto w : reversed.successors[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      out.push_back(w);
      q.push(w);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void max_normalize(std::vector<double>& v) {
  const double mx = *std::max_element(v.begin(), v.end());
  if (mx > 0.0)
    for (auto& x : v) x /= mx;
}

}  // namespace

SpectralData spectral(const TransitionMatrix& a, double tol, int max_iter) {
  if (a.empty()) throw PreconditionError("spectral: empty matrix");
  if (!a.is_essential()) throw PreconditionError("spectral: matrix is not essential");

  const SparseGraph g = SparseGraph::from_matrix(a);
  const SparseGraph gt = SparseGraph::from_matrix(a.transpose());
  const auto comps = strongly_connected_components(g);

  struct Solved {
    std::size_t index;
    ComponentPerron right;
  };
  std::vector<Solved> solved;
  SpectralData out;
  out.tolerance = tol;
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    if (!is_nontrivial(g, comps[ci])) continue;
    auto cp = component_perron(g, comps[ci], tol, max_iter);
    out.iterations += cp.iterations;
    out.perron_value = std::max(out.perron_value, cp.value);
    solved.push_back({ci, std::move(cp)});
  }

  // Components whose value agrees with the maximum up to the iteration tolerance.
  const double cutoff = out.perron_value * (1.0 - 4.0 * std::max(tol, 1e-15));
  std::vector<const Solved*> dominant;
  for (const auto& s : solved)
    if (s.right.value >= cutoff) dominant.push_back(&s);

  // Right vector: the earliest dominant component has no dominant component upstream.
  {
    const Solved& first = *dominant.front();
    const auto& comp = comps[first.index];
    out.right_vec = extend_vector(a, comp, first.right.vector, vertices_reaching(gt, comp), out.perron_value);
  }
  // Left vector: the latest dominant component has no dominant component downstream.
  {
    const Solved& last = *dominant.back();
    const auto& comp = comps[last.index];
    const auto left = component_perron(gt, comp, tol, max_iter);
    out.iterations += left.iterations;
    out.left_vec = extend_vector(a.transpose(), comp, left.vector, vertices_reaching(g, comp), out.perron_value);
  }
  max_normalize(out.right_vec);
  max_normalize(out.left_vec);
  return out;
}

double entropy(const TransitionMatrix& a, double tol) {
  const TransitionMatrix e = essentialize(a);
  if (e.empty()) return -std::numeric_limits<double>::infinity();
  return std::log(spectral(e, tol).perron_value);
}

const char* to_string(Irreducibility c) {
  switch (c) {
    case Irreducibility::Irreducible: return "Irreducible";
    case Irreducibility::ReducibleWithIrreducibleComponent: return "ReducibleWithIrreducibleComponent";
    case Irreducibility::NoIrreducibleComponent: return "NoIrreducibleComponent";
  }
  return "?";
}

Irreducibility classify(const TransitionMatrix& a) {
  if (a.empty()) return Irreducibility::NoIrreducibleComponent;
  const SparseGraph g = SparseGraph::from_matrix(a);
  const auto comps = strongly_connected_components(g);
  const bool any_cycle =
      std::any_of(comps.begin(), comps.end(), [&](const Component& c) { return is_nontrivial(g, c); });
  if (!any_cycle) return Irreducibility::NoIrreducibleComponent;
  if (comps.size() == 1) return Irreducibility::Irreducible;
  return Irreducibility::ReducibleWithIrreducibleComponent;
}

bool is_permutation(const TransitionMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.row_sum(i) != 1 || a.col_sum(i) != 1) return false;
  return true;
}

bool transitive_with_period(const TransitionMatrix& a) {
  return classify(essentialize(a)) == Irreducibility::Irreducible;
}

std::size_t period(const TransitionMatrix& a) {
  if (classify(a) != Irreducibility::Irreducible) return 0;
  const std::size_t k = a.size();
  std::vector<long> level(k, -1);
  std::queue<std::size_t> q;
  level[0] = 0;
  q.push(0);
  std::size_t g = 0;
  while (!q.empty()) {
    const auto u = q.front();
    q.pop();
    for (std::size_t v = 0; v < k; ++v) {
      if (!a(u, v)) continue;
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        q.push(v);
      } else {
        g = std::gcd(g, static_cast<std::size_t>(std::labs(level[u] + 1 - level[v])));
      }
    }
  }
  return g;
}

bool is_primitive(const TransitionMatrix& a) { return period(a) == 1; }

LineConstraints LineConstraints::from_axes(std::size_t alphabet, const std::vector<TransitionMatrix>& axes) {
  LineConstraints lc;
  lc.alphabet = alphabet;
  lc.symbols.assign(alphabet, true);
  for (const auto& a : axes) {
    if (a.size() != alphabet) {
      throw ConfigError("axis matrix has " + std::to_string(a.size()) + " symbols, expected a common alphabet of " +
                        std::to_string(alphabet));
    }
    const auto ess = essential_symbols(a);
    for (std::size_t s = 0; s < alphabet; ++s) lc.symbols[s] = lc.symbols[s] && ess[s];
    lc.axes.push_back(a.masked(ess));
  }
  return lc;
}

std::size_t LineConstraints::allowed_count() const {
  return static_cast<std::size_t>(std::count(symbols.begin(), symbols.end(), true));
}

}  // namespace axent
