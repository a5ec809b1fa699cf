#include "axent/mis_surface.hpp"

#include <cmath>
#include <limits>

#include "axent/errors.hpp"
#include "axent/numeric.hpp"
#include "axent/tree_axial.hpp"

namespace axent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_p(std::uint64_t p) {
  if (p < 2) throw ConfigError("multiplicative step p must be at least 2");
}

// D_l = l log k - log|omega_l| for l = 1..l_max (index 0 unused). Exact counts
// equal to k^l and full matrices give exactly 0; empty word sets give +inf.
std::vector<double> word_deficits(const TransitionMatrix& omega, std::uint64_t l_max) {
  const std::size_t k = omega.size();
  std::vector<double> out(l_max + 1, 0.0);
  if (k == 0) {
    std::fill(out.begin() + 1, out.end(), kInf);
    return out;
  }
  if (omega.is_full()) return out;
  const double logk = std::log(static_cast<double>(k));
  const auto w = word_count_sequence(omega, l_max, CountMode::Auto);
  for (std::uint64_t l = 1; l <= l_max; ++l) {
    const auto& c = w[l - 1];
    if (c.is_zero()) {
      out[l] = kInf;
    } else if (c.is_exact() && c.exact_value() == pow_big(BigInt(k), l)) {
      out[l] = 0.0;
    } else {
      out[l] = static_cast<double>(l) * logk - c.log();
    }
  }
  return out;
}

std::vector<double> word_logs(const TransitionMatrix& omega, std::uint64_t l_max) {
  std::vector<double> out(l_max + 1, 0.0);
  const auto w = word_count_sequence(omega, l_max, CountMode::Auto);
  for (std::uint64_t l = 1; l <= l_max; ++l) out[l] = w[l - 1].log();
  return out;
}

// Largest r with base^r <= x.
std::uint64_t floor_log(std::uint64_t x, std::uint64_t base) {
  std::uint64_t r = 0;
  for (std::uint64_t v = x; v >= base; v /= base) ++r;
  return r;
}

// Truncation index I for sum_{i>I} i x^i below tol / scale.
std::uint64_t tail_terms(double x, double scale, double tol, std::uint64_t start) {
  std::uint64_t I = std::max<std::uint64_t>(start, 1);
  while (scale * tail_j_xj(x, static_cast<double>(I)) >= tol && I < 100000) ++I;
  return I;
}

// c sum_{i > r} x_scale log|omega_i| / p^(i-1), truncated once the bound
// c x_scale log k p sum_{i>I} i / p^i falls below 1e-12 relative.
double predicted_tail(const TransitionMatrix& omega, double c, double x_scale, std::uint64_t p, std::uint64_t r) {
  const std::size_t k = omega.size();
  const double logk = std::log(static_cast<double>(std::max<std::size_t>(k, 1)));
  const double pp = static_cast<double>(p);
  // Terms above r behave like x_scale i log k / p^(i-1), so the relative cut is
  // applied to the rescaled sum.
  std::uint64_t I = r + 1;
  while (c * x_scale * logk * pp * tail_j_xj(1.0 / pp, static_cast<double>(I)) >= 1e-12 * std::max(1.0, x_scale) &&
         I < r + 10000)
    ++I;
  const auto logs = word_logs(omega, I);
  double sum = 0.0;
  for (std::uint64_t i = r + 1; i <= I; ++i) sum += x_scale * logs[i] / std::pow(pp, static_cast<double>(i - 1));
  return c * sum;
}

}  // namespace

std::uint64_t ChainDecomposition::total_length() const {
  std::uint64_t t = 0;
  for (const auto& [len, mult] : multiplicity) t += len * mult;
  return t;
}

ChainDecomposition chain_decompose(std::uint64_t x, std::uint64_t p) {
  check_p(p);
  if (x == 0) throw ConfigError("chain decomposition needs x >= 1");
  auto g = [p](std::uint64_t n) { return n - n / p; };
  ChainDecomposition out;
  out.x = x;
  std::uint64_t hi = x;  // floor(x / p^(l-1))
  for (std::uint64_t l = 1; hi > 0; ++l) {
    const std::uint64_t lo = hi / p;
    const std::uint64_t m = g(hi) - g(lo);
    if (m > 0) out.multiplicity[l] = m;
    hi = lo;
  }
  return out;
}

ChainDecomposition chain_decompose_linear(std::uint64_t x, std::uint64_t p) {
  check_p(p);
  if (x == 0) throw ConfigError("chain decomposition needs x >= 1");
  ChainDecomposition out;
  out.x = x;
  for (std::uint64_t i = 1; i <= x; ++i) {
    if (i % p == 0) continue;
    std::uint64_t len = 1;
    for (std::uint64_t j = i; j <= x / p; j *= p) ++len;
    ++out.multiplicity[len];
  }
  return out;
}

LogCount count_mis(const MultiplicativeSystem& sys, std::uint64_t x, CountMode mode) {
  const auto chains = chain_decompose(x, sys.p);
  const std::uint64_t l_max = chains.multiplicity.rbegin()->first;
  const std::size_t k = sys.omega.size();
  const bool exact = mode == CountMode::Exact ||
                     (mode == CountMode::Auto && static_cast<double>(x) * std::log2(std::max<double>(k, 2.0)) < 1e6);
  const auto w = word_count_sequence(sys.omega, l_max, exact ? CountMode::Exact : CountMode::Auto);
  if (exact) {
    BigInt total = 1;
    for (const auto& [len, mult] : chains.multiplicity) total *= pow_big(w[len - 1].exact_value(), mult);
    return LogCount::exact(total);
  }
  double log_total = 0.0;
  for (const auto& [len, mult] : chains.multiplicity) {
    if (w[len - 1].is_zero()) return LogCount::zero();
    log_total += static_cast<double>(mult) * w[len - 1].log();
  }
  return LogCount::from_log(log_total);
}

MisEntropy mis_entropy(const MultiplicativeSystem& sys, double tail_tol) {
  check_p(sys.p);
  const std::size_t k = sys.omega.size();
  MisEntropy out;
  if (k == 0) {
    out.value = -kInf;
    out.deficit = kInf;
    return out;
  }
  const double logk = std::log(static_cast<double>(k));
  const double pp = static_cast<double>(sys.p);
  const double c = (1.0 - 1.0 / pp) * (1.0 - 1.0 / pp);
  // sum_{i>I} i / p^(i-1) = p sum_{i>I} i (1/p)^i
  out.terms = tail_terms(1.0 / pp, logk * c * pp, tail_tol, 1);
  out.tail_bound = logk * c * pp * tail_j_xj(1.0 / pp, static_cast<double>(out.terms));
  const auto deficits = word_deficits(sys.omega, out.terms);
  double eta = 0.0;
  double weight = 1.0;
  for (std::uint64_t i = 1; i <= out.terms; ++i) {
    if (std::isinf(deficits[i])) {
      out.value = -kInf;
      out.deficit = kInf;
      return out;
    }
    eta += deficits[i] * weight;
    weight /= pp;
  }
  out.deficit = c * eta;
  out.value = logk - out.deficit;
  return out;
}

std::vector<ResidualRow> boundary_residual(const MultiplicativeSystem& sys, const std::vector<std::uint64_t>& xs,
                                           const std::vector<std::int64_t>& ns) {
  if (!ns.empty() && ns.size() != xs.size()) throw ConfigError("sequence indices must match the x values");
  const auto h = mis_entropy(sys, 1e-12);
  const double pp = static_cast<double>(sys.p);
  const double c = (1.0 - 1.0 / pp) * (1.0 - 1.0 / pp);
  const double logk = std::log(static_cast<double>(sys.omega.size()));

  std::vector<ResidualRow> rows;
  rows.reserve(xs.size());
  for (std::size_t idx = 0; idx < xs.size(); ++idx) {
    const std::uint64_t x = xs[idx];
    const auto chains = chain_decompose(x, sys.p);
    const auto deficits = word_deficits(sys.omega, chains.multiplicity.rbegin()->first);
    ResidualRow row;
    row.x = x;
    double residual = 0.0;
    double deficit_total = 0.0;
    for (const auto& [len, mult] : chains.multiplicity) {
      residual += static_cast<double>(mult) * (static_cast<double>(len) * h.deficit - deficits[len]);
      deficit_total += static_cast<double>(mult) * deficits[len];
    }
    row.log_count = static_cast<double>(x) * logk - deficit_total;
    row.residual = residual;
    row.predicted = predicted_tail(sys.omega, c, static_cast<double>(x), sys.p, floor_log(x, sys.p));
    row.difference = row.residual - row.predicted;
    if (!ns.empty()) {
      row.n = ns[idx];
      if (ns[idx] != 0) row.residual_per_n = row.residual / static_cast<double>(ns[idx]);
    }
    rows.push_back(row);
  }
  return rows;
}

SurfaceReport tree_surface_correction(const TransitionMatrix& omega, std::size_t d, std::size_t n_max,
                                      std::size_t exact_limit) {
  if (d < 2) throw ConfigError("tree surface correction needs d >= 2");
  const std::size_t k = omega.size();
  if (k == 0) throw ConfigError("omega must have a nonempty alphabet");
  const double logk = std::log(static_cast<double>(k));
  const double dd = static_cast<double>(d);

  // eta = log k - h = (d-1)^2 sum_j D_j / d^(j+1)
  const auto plan = plan_full_extension_series(d, d - 1, logk, 1e-13);
  const auto deficits = word_deficits(omega, std::max<std::uint64_t>(plan.terms, n_max + 1));
  double eta = 0.0;
  double weight = 1.0 / dd;
  for (std::size_t j = 1; j <= plan.terms; ++j) {
    weight /= dd;
    eta += deficits[j] * weight;
  }
  eta *= (dd - 1.0) * (dd - 1.0);

  SurfaceReport rep;
  rep.d = d;
  rep.entropy = logk - eta;
  const TreeAxialSpec inner({omega});
  std::vector<BigInt> words;
  if (exact_limit > 0) {
    const auto w = word_count_sequence(omega, std::min(exact_limit, n_max) + 1, CountMode::Exact);
    for (const auto& c : w) words.push_back(c.exact_value());
  }

  for (std::size_t n = 1; n <= n_max; ++n) {
    SurfaceRow row;
    row.n = n;
    row.ball = ball_size_double(d, n);
    // Pieces: one line of length n + 1 plus (d-1) d^(n-j) lines of length j.
    double surface = static_cast<double>(n + 1) * eta - deficits[n + 1];
    double deficit_total = deficits[n + 1];
    for (std::size_t j = 1; j <= n; ++j) {
      const double mult = (dd - 1.0) * std::pow(dd, static_cast<double>(n - j));
      surface += mult * (static_cast<double>(j) * eta - deficits[j]);
      deficit_total += mult * deficits[j];
    }
    row.log_lhs = row.ball * logk - deficit_total;
    row.bulk = row.ball * rep.entropy;
    row.surface = surface;
    const std::uint64_t r = floor_log(static_cast<std::uint64_t>(row.ball), d);
    row.predicted = predicted_tail(omega, (dd - 1.0) * (dd - 1.0), row.ball, d, r);
    row.unexplained = row.surface - row.predicted;
    row.surface_per_n = row.surface / static_cast<double>(n);
    row.surface_per_ball = row.surface / row.ball;

    if (n <= exact_limit) {
      BigInt pieces = words[n];
      for (std::size_t j = 1; j <= n; ++j)
        pieces *= pow_big(words[j - 1], static_cast<std::uint64_t>((d - 1) * pow_big(BigInt(d), n - j)));
      const BigInt product = partition_product(inner, d, d - 1, n);
      const auto dp = count_ball(inner.with_full_axes(d - 1), n, CountMode::Exact);
      row.exact_match = pieces == product && product == *dp.exact_total;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace axent
