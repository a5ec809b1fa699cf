#include "axent/cayley.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "axent/errors.hpp"
#include "axent/numeric.hpp"

namespace axent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double to_double(const BigInt& x) { return x.convert_to<double>(); }

// Typed extendability: s in E(i) iff for every child generator j of a type-i
// vertex some t in E(j) has axes[j][s,t] = 1. Returns E per type.
std::vector<std::vector<bool>> typed_extendable(const TransitionMatrix& m, const std::vector<TransitionMatrix>& axes,
                                                std::size_t k) {
  const std::size_t d = m.size();
  std::vector<std::vector<bool>> e(d, std::vector<bool>(k, true));
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t s = 0; s < k; ++s) {
        if (!e[i][s]) continue;
        for (std::size_t j = 0; j < d; ++j) {
          if (!m(i, j)) continue;
          bool any = false;
          for (std::size_t t = 0; t < k && !any; ++t) any = e[j][t] && axes[j](s, t);
          if (!any) {
            e[i][s] = false;
            changed = true;
            break;
          }
        }
      }
    }
  }
  return e;
}

}  // namespace

MarkovCayleyTree MarkovCayleyTree::golden_mean_tree() { return {TransitionMatrix::golden_mean()}; }

MarkovCayleyTree MarkovCayleyTree::g1() { return {TransitionMatrix::from_rows({{1, 1}, {0, 1}})}; }

MarkovCayleyTree MarkovCayleyTree::full_tree(std::size_t d) { return {TransitionMatrix::full(d)}; }

TreeLevels levels(const MarkovCayleyTree& tree, std::size_t n_max) {
  const std::size_t d = tree.d();
  const auto& m = tree.adjacency;
  TreeLevels out;
  std::vector<BigInt> v(d, 1);  // type counts on level 1
  BigInt ball = 0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    BigInt size = 0;
    BigInt branching = 0;
    if (n == 0) {
      size = 1;
      branching = d >= 2 ? 1 : 0;
    } else {
      for (std::size_t i = 0; i < d; ++i) {
        size += v[i];
        if (m.row_sum(i) >= 2) branching += v[i];
      }
    }
    ball += size;
    out.level_sizes.push_back(size);
    out.ball_sizes.push_back(ball);
    out.level_fraction.push_back(to_double(size) / to_double(ball));
    out.branching_ratio.push_back(size == 0 ? 0.0 : to_double(branching) / to_double(size));
    if (n >= 1) {
      std::vector<BigInt> next(d, 0);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          if (m(i, j)) next[j] += v[i];
      v = std::move(next);
    }
  }
  const auto ess = essentialize(m);
  if (ess.size() > 0) out.growth_rate = spectral(ess).perron_value;
  return out;
}

std::vector<BigInt> golden_tree_sequence(std::size_t n_max) {
  std::vector<BigInt> a(n_max + 1, 0);
  if (n_max >= 1) a[1] = 1;
  if (n_max >= 2) a[2] = 2;
  for (std::size_t i = 3; i <= n_max; ++i) a[i] = a[i - 1] + a[i - 2];
  return a;
}

BallCounts count_ball_cayley(const MarkovCayleyTree& tree, const std::vector<TransitionMatrix>& axes, std::size_t n,
                             CountMode mode) {
  const std::size_t d = tree.d();
  if (axes.size() != d) {
    throw ConfigError("tree has " + std::to_string(d) + " generators but " + std::to_string(axes.size()) +
                      " axes were given");
  }
  if (d == 0) throw ConfigError("tree needs at least one generator");
  const std::size_t k = axes.front().size();
  const auto lc = LineConstraints::from_axes(k, axes);
  const auto& ax = lc.axes;
  const auto& m = tree.adjacency;
  const auto e = typed_extendable(m, ax, k);

  std::vector<bool> root(k, true);
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t j = 0; j < d && root[s]; ++j) {
      bool any = false;
      for (std::size_t t = 0; t < k && !any; ++t) any = e[j][t] && ax[j](s, t);
      root[s] = any;
    }

  const auto lv = levels(tree, n);
  const double size = to_double(lv.ball_sizes[n]);
  const double logk = k == 0 ? -kInf : std::log(static_cast<double>(k));
  const bool exact = mode == CountMode::Exact ||
                     (mode == CountMode::Auto && size * std::log2(std::max<double>(k, 2.0)) < 1e6);

  BallCounts out;
  out.depth = n;

  // Log DP over (type, symbol).
  std::vector<std::vector<double>> c(d, std::vector<double>(k, -kInf));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t s = 0; s < k; ++s)
      if (e[i][s]) c[i][s] = 0.0;
  std::vector<double> buf;
  auto factor = [&](const std::vector<std::vector<double>>& prev, std::size_t j, std::size_t s) {
    buf.clear();
    for (std::size_t t = 0; t < k; ++t)
      if (ax[j](s, t)) buf.push_back(prev[j][t]);
    return log_sum_exp(buf);
  };
  auto root_logs = [&](const std::vector<std::vector<double>>& prev) {
    std::vector<double> r(k, -kInf);
    for (std::size_t s = 0; s < k; ++s) {
      if (!root[s]) continue;
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc += factor(prev, j, s);
      r[s] = acc;
    }
    return r;
  };
  if (n == 0) {
    out.log_by_root.assign(k, -kInf);
    for (std::size_t s = 0; s < k; ++s)
      if (root[s]) out.log_by_root[s] = 0.0;
  } else {
    for (std::size_t level = 1; level < n; ++level) {
      std::vector<std::vector<double>> next(d, std::vector<double>(k, -kInf));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t s = 0; s < k; ++s) {
          if (!e[i][s]) continue;
          double acc = 0.0;
          for (std::size_t j = 0; j < d; ++j)
            if (m(i, j)) acc += factor(c, j, s);
          next[i][s] = acc;
        }
      c = std::move(next);
    }
    out.log_by_root = root_logs(c);
  }
  out.log_total = log_sum_exp(out.log_by_root);

  if (exact) {
    std::vector<std::vector<BigInt>> x(d, std::vector<BigInt>(k, 0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t s = 0; s < k; ++s) x[i][s] = e[i][s] ? 1 : 0;
    auto sum = [&](const std::vector<std::vector<BigInt>>& prev, std::size_t j, std::size_t s) {
      BigInt acc = 0;
      for (std::size_t t = 0; t < k; ++t)
        if (ax[j](s, t)) acc += prev[j][t];
      return acc;
    };
    for (std::size_t level = 1; level < n; ++level) {
      std::vector<std::vector<BigInt>> next(d, std::vector<BigInt>(k, 0));
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t s = 0; s < k; ++s) {
          if (!e[i][s]) continue;
          BigInt acc = 1;
          for (std::size_t j = 0; j < d; ++j)
            if (m(i, j)) acc *= sum(x, j, s);
          next[i][s] = std::move(acc);
        }
      x = std::move(next);
    }
    std::vector<BigInt> by_root(k, 0);
    BigInt total = 0;
    for (std::size_t s = 0; s < k; ++s) {
      if (!root[s]) continue;
      BigInt acc = 1;
      if (n > 0)
        for (std::size_t j = 0; j < d; ++j) acc *= sum(x, j, s);
      by_root[s] = acc;
      total += acc;
    }
    for (std::size_t s = 0; s < k; ++s) out.log_by_root[s] = log_of(by_root[s]);
    out.exact_by_root = std::move(by_root);
    out.exact_total = total;
    out.log_total = log_of(total);
  }
  out.log_deficit = std::isinf(out.log_total) ? kInf : size * logk - out.log_total;
  return out;
}

double golden_ratio() { return (1.0 + std::sqrt(5.0)) / 2.0; }

double gm_entropy_E_times_X(const TransitionMatrix& x) {
  const double rho = golden_ratio();
  const auto w = word_count_sequence(x, 2, CountMode::Exact);
  return w[0].log() / (rho * rho * rho) + w[1].log() / (rho * rho);
}

EntropyReport gm_entropy_X_times_E(const TransitionMatrix& x, double tail_tol) {
  const double rho = golden_ratio();
  const std::size_t k = x.size();
  if (k == 0) throw ConfigError("empty axis matrix");
  const double logk = std::log(static_cast<double>(k));
  const double r3 = 1.0 / (rho * rho * rho);

  EntropyReport rep;
  rep.quantity = "entropy of X x E on the golden-mean tree";
  std::size_t terms = 1;
  while (logk * r3 * tail_j_xj(1.0 / rho, static_cast<double>(terms)) >= tail_tol && terms < 100000) ++terms;
  rep.terms = terms;
  rep.tail_bound = logk * r3 * tail_j_xj(1.0 / rho, static_cast<double>(terms));

  // sum_i i / rho^(i+3) = 1, so h = log k - sum_i (i log k - log|Z_i|) / rho^(i+3).
  const auto w = word_count_sequence(x, terms, CountMode::Auto);
  double deficit = 0.0;
  double weight = r3;
  for (std::size_t i = 1; i <= terms; ++i) {
    weight /= rho;
    if (w[i - 1].is_zero()) {
      rep.value = -kInf;
      rep.notes.push_back("X has no words of length " + std::to_string(i));
      return rep;
    }
    deficit += (static_cast<double>(i) * logk - w[i - 1].log()) * weight;
    rep.estimates.push_back(logk - deficit);
  }
  rep.value = logk - deficit;
  attach_sequence_diagnostics(rep);
  return rep;
}

std::string GmPartitionCheck::detail() const {
  std::ostringstream os;
  os << "n=" << n << " E x X: " << e_times_x_count << (e_times_x ? " == " : " != ") << e_times_x_product
     << "; X x E: " << x_times_e_count << (x_times_e ? " == " : " != ") << x_times_e_product;
  return os.str();
}

GmPartitionCheck verify_gm_partitions(const TransitionMatrix& x, std::size_t n) {
  if (n < 1) throw ConfigError("partition identities need n >= 1");
  const auto tree = MarkovCayleyTree::golden_mean_tree();
  const auto full = TransitionMatrix::full(x.size());
  const auto a = golden_tree_sequence(n + 1);
  std::vector<BigInt> z(n + 2, 0);  // z[i] = |P(Z_i, X)|
  const auto w = word_count_sequence(x, n + 1, CountMode::Exact);
  for (std::size_t i = 1; i <= n + 1; ++i) z[i] = w[i - 1].exact_value();

  GmPartitionCheck out;
  out.n = n;
  BigInt s = 0;
  for (std::size_t i = 1; i <= n + 1; ++i) s += a[i];
  const BigInt pairs = s - a[n];
  if (pairs % 2 != 0) throw Error("golden-tree bookkeeping: odd pair count");
  out.e_times_x_product = pow_big(z[1], static_cast<std::uint64_t>(a[n])) *
                          pow_big(z[2], static_cast<std::uint64_t>(pairs / 2));
  out.e_times_x_count = *count_ball_cayley(tree, {full, x}, n, CountMode::Exact).exact_total;
  out.e_times_x = out.e_times_x_count == out.e_times_x_product;

  BigInt prod = z[n + 1] * z[n];
  for (std::size_t i = 1; i + 1 <= n; ++i) prod *= pow_big(z[i], static_cast<std::uint64_t>(a[n - i]));
  out.x_times_e_product = prod;
  out.x_times_e_count = *count_ball_cayley(tree, {x, full}, n, CountMode::Exact).exact_total;
  out.x_times_e = out.x_times_e_count == out.x_times_e_product;
  return out;
}

StrictProbe strict_inequality_probe(const MarkovCayleyTree& tree, const TransitionMatrix& x, std::size_t depth) {
  const auto lv = levels(tree, depth);
  if (!lv.growth_rate || *lv.growth_rate <= 1.0 + 1e-9)
    throw PreconditionError("growth rate must exceed 1 for the strict inequality; use g1_entropy for gamma = 1");
  if (tree.d() != 2) throw ConfigError("the strict-inequality probe uses two generators");
  if (x.is_full()) throw PreconditionError("X is a full shift; the inequality is an equality there");
  if (!x.is_essential()) throw PreconditionError("X must be essential");

  StrictProbe p;
  p.gamma = *lv.growth_rate;
  p.h_x = entropy(x);
  const auto full = TransitionMatrix::full(x.size());
  const double size = lv.ball_sizes[depth].convert_to<double>();
  p.h_e_times_x = count_ball_cayley(tree, {full, x}, depth, CountMode::Log).log_total / size;
  p.h_x_times_e = count_ball_cayley(tree, {x, full}, depth, CountMode::Log).log_total / size;
  p.margin_e_times_x = p.h_e_times_x - p.h_x;
  p.margin_x_times_e = p.h_x_times_e - p.h_x;
  p.level_fraction = lv.level_fraction[depth];
  p.limit_fraction = (p.gamma - 1.0) / p.gamma;
  p.branching_ratio = lv.branching_ratio[depth];
  if (tree.adjacency.is_full())
    p.series_e_times_x = *full_extension_entropy_tree(TreeAxialSpec({x}), 2, 1).value;
  return p;
}

EntropyReport g1_entropy(const TransitionMatrix& x, std::size_t n_max) {
  if (!is_primitive(x)) throw PreconditionError("g1_entropy requires a primitive matrix");
  EntropyReport rep;
  rep.quantity = "entropy of E x X on the tree with M = [[1,1],[0,1]]";
  rep.closed_form = entropy(x);
  const auto w = word_count_sequence(x, n_max + 1, CountMode::Auto);
  double acc = w[0].log();
  for (std::size_t n = 1; n <= n_max; ++n) {
    acc += w[n].log();
    const double denom = static_cast<double>(n + 1) * static_cast<double>(n + 2) / 2.0;
    rep.estimates.push_back(acc / denom);
  }
  if (!rep.estimates.empty()) rep.value = rep.estimates.back();
  attach_sequence_diagnostics(rep);
  return rep;
}

}  // namespace axent
