#include "axent/tree_axial.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "axent/errors.hpp"
#include "axent/grid_axial.hpp"
#include "axent/numeric.hpp"
#include "axent/sparse_graph.hpp"

namespace axent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kExactBitLimit = 1e6;

// Masked axes plus the extendable symbol set, shared by both DPs.
struct TreeConstraints {
  std::size_t k = 0;
  std::vector<bool> symbols;
  std::vector<std::vector<std::vector<std::size_t>>> succ;  // succ[axis][s] within symbols
};

TreeConstraints prepare(const TreeAxialSpec& spec) {
  TreeConstraints tc;
  tc.k = spec.alphabet();
  tc.symbols = tree_extendable_symbols(spec);
  const auto lc = LineConstraints::from_axes(spec.alphabet(), spec.axes());
  tc.succ.resize(spec.d());
  for (std::size_t i = 0; i < spec.d(); ++i) {
    tc.succ[i].resize(tc.k);
    for (std::size_t s = 0; s < tc.k; ++s) {
      if (!tc.symbols[s]) continue;
      for (std::size_t t = 0; t < tc.k; ++t)
        if (tc.symbols[t] && lc.axes[i](s, t)) tc.succ[i][s].push_back(t);
    }
  }
  return tc;
}

// Normalized log DP: u_j(s) = log c_j(s) - (|Delta_j| - 1) log k. Each level
// subtracts log k per axis factor, so full shifts stay at exactly zero.
class NormalizedDp {
 public:
  explicit NormalizedDp(const TreeConstraints& tc) : tc_(tc), logk_(std::log(static_cast<double>(tc.k))) {
    u_.assign(tc.k, -kInf);
    for (std::size_t s = 0; s < tc.k; ++s)
      if (tc.symbols[s]) u_[s] = 0.0;
  }

  void step() {
    std::vector<double> next(tc_.k, -kInf);
    std::vector<double> buf;
    for (std::size_t s = 0; s < tc_.k; ++s) {
      if (!tc_.symbols[s]) continue;
      double acc = 0.0;
      for (const auto& axis : tc_.succ) {
        buf.clear();
        for (auto t : axis[s]) buf.push_back(u_[t]);
        acc += log_sum_exp(buf) - logk_;
      }
      next[s] = acc;
    }
    u_ = std::move(next);
  }

  const std::vector<double>& u() const { return u_; }

  double deficit() const {
    if (tc_.k == 0) return kInf;
    const double l = log_sum_exp(u_);
    return std::isinf(l) ? kInf : logk_ - l;
  }

 private:
  const TreeConstraints& tc_;
  double logk_;
  std::vector<double> u_;
};

class ExactDp {
 public:
  explicit ExactDp(const TreeConstraints& tc) : tc_(tc), c_(tc.k) {
    for (std::size_t s = 0; s < tc.k; ++s) c_[s] = tc.symbols[s] ? 1 : 0;
  }

  void step() {
    std::vector<BigInt> next(tc_.k);
    for (std::size_t s = 0; s < tc_.k; ++s) {
      if (!tc_.symbols[s]) continue;
      BigInt prod = 1;
      for (const auto& axis : tc_.succ) {
        BigInt sum = 0;
        for (auto t : axis[s]) sum += c_[t];
        prod *= sum;
        if (prod == 0) break;
      }
      next[s] = std::move(prod);
    }
    c_ = std::move(next);
  }

  const std::vector<BigInt>& c() const { return c_; }

  BigInt total() const {
    BigInt t = 0;
    for (const auto& x : c_) t += x;
    return t;
  }

 private:
  const TreeConstraints& tc_;
  std::vector<BigInt> c_;
};

double log_alphabet(std::size_t k) { return k == 0 ? -kInf : std::log(static_cast<double>(k)); }

void check_arity(const TreeAxialSpec& inner, std::size_t d, std::size_t r) {
  if (r < 1 || r > d) throw ConfigError("full extension needs 1 <= r <= d");
  if (inner.d() != d - r) {
    throw ConfigError("inner spec has arity " + std::to_string(inner.d()) + ", expected d - r = " +
                      std::to_string(d - r));
  }
}

}  // namespace

TreeAxialSpec::TreeAxialSpec(std::size_t alphabet, std::vector<TransitionMatrix> axes)
    : alphabet_(alphabet), axes_(std::move(axes)) {
  for (const auto& a : axes_)
    if (a.size() != alphabet_) throw ConfigError("tree spec: axes must share a common alphabet");
}

TreeAxialSpec::TreeAxialSpec(std::vector<TransitionMatrix> axes)
    : alphabet_(axes.empty() ? 0 : axes.front().size()), axes_(std::move(axes)) {
  if (axes_.empty()) throw ConfigError("tree spec: at least one axis required to infer the alphabet");
  for (const auto& a : axes_)
    if (a.size() != alphabet_) throw ConfigError("tree spec: axes must share a common alphabet");
}

TreeAxialSpec TreeAxialSpec::isotropic(const TransitionMatrix& a, std::size_t d) {
  return TreeAxialSpec(a.size(), std::vector<TransitionMatrix>(d, a));
}

TreeAxialSpec TreeAxialSpec::with_full_axes(std::size_t r) const {
  std::vector<TransitionMatrix> axes(r, TransitionMatrix::full(alphabet_));
  axes.insert(axes.end(), axes_.begin(), axes_.end());
  return TreeAxialSpec(alphabet_, std::move(axes));
}

LogCount BallCounts::total() const {
  if (exact_total) return LogCount::exact(*exact_total);
  return LogCount::from_log(log_total);
}

std::vector<bool> tree_extendable_symbols(const TreeAxialSpec& spec) {
  const auto lc = LineConstraints::from_axes(spec.alphabet(), spec.axes());
  std::vector<bool> s = lc.symbols;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < spec.alphabet(); ++x) {
      if (!s[x]) continue;
      for (const auto& a : lc.axes) {
        bool any = false;
        for (std::size_t t = 0; t < spec.alphabet() && !any; ++t) any = s[t] && a(x, t);
        if (!any) {
          s[x] = false;
          changed = true;
          break;
        }
      }
    }
  }
  return s;
}

BigInt ball_size(std::size_t d, std::size_t n) {
  if (d == 0) return 1;
  if (d == 1) return BigInt(n + 1);
  return (pow_big(BigInt(d), n + 1) - 1) / (d - 1);
}

double ball_size_double(std::size_t d, std::size_t n) {
  if (d == 0) return 1.0;
  if (d == 1) return static_cast<double>(n + 1);
  const double dd = static_cast<double>(d);
  return (std::pow(dd, static_cast<double>(n + 1)) - 1.0) / (dd - 1.0);
}

BallCounts count_ball(const TreeAxialSpec& spec, std::size_t n, CountMode mode) {
  const auto tc = prepare(spec);
  const double size = ball_size_double(spec.d(), n);
  const bool exact = mode == CountMode::Exact ||
                     (mode == CountMode::Auto && size * std::log2(std::max<double>(spec.alphabet(), 2.0)) < kExactBitLimit);

  NormalizedDp dp(tc);
  for (std::size_t j = 0; j < n; ++j) dp.step();

  BallCounts out;
  out.depth = n;
  out.log_deficit = dp.deficit();
  const double offset = (size - 1.0) * log_alphabet(tc.k);
  out.log_by_root.resize(tc.k);
  for (std::size_t s = 0; s < tc.k; ++s) out.log_by_root[s] = std::isinf(dp.u()[s]) ? -kInf : dp.u()[s] + offset;
  out.log_total = std::isinf(out.log_deficit) ? -kInf : size * log_alphabet(tc.k) - out.log_deficit;

  if (exact) {
    ExactDp ex(tc);
    for (std::size_t j = 0; j < n; ++j) ex.step();
    out.exact_by_root = ex.c();
    out.exact_total = ex.total();
    out.log_total = log_of(*out.exact_total);
    for (std::size_t s = 0; s < tc.k; ++s) out.log_by_root[s] = log_of(ex.c()[s]);
  }
  return out;
}

std::vector<double> ball_log_deficits(const TreeAxialSpec& spec, std::size_t n_max) {
  const auto tc = prepare(spec);
  NormalizedDp dp(tc);
  std::vector<double> out;
  out.reserve(n_max + 1);
  for (std::size_t j = 0; j <= n_max; ++j) {
    if (j > 0) dp.step();
    out.push_back(dp.deficit());
  }
  return out;
}

std::vector<double> ball_log_totals(const TreeAxialSpec& spec, std::size_t n_max) {
  const auto deficits = ball_log_deficits(spec, n_max);
  const double logk = log_alphabet(spec.alphabet());
  std::vector<double> out;
  out.reserve(deficits.size());
  for (std::size_t j = 0; j < deficits.size(); ++j)
    out.push_back(std::isinf(deficits[j]) ? -kInf : ball_size_double(spec.d(), j) * logk - deficits[j]);
  return out;
}

std::vector<BigInt> ball_exact_totals(const TreeAxialSpec& spec, std::size_t n_max) {
  const auto tc = prepare(spec);
  ExactDp ex(tc);
  std::vector<BigInt> out;
  out.reserve(n_max + 1);
  for (std::size_t j = 0; j <= n_max; ++j) {
    if (j > 0) ex.step();
    out.push_back(ex.total());
  }
  return out;
}

SeriesPlan plan_full_extension_series(std::size_t d, std::size_t r, double log_alphabet_value, double tail_tol) {
  if (r < 1 || r > d || d < 2) throw ConfigError("series needs d >= 2 and 1 <= r <= d");
  const std::size_t q = d - r;
  const double dd = static_cast<double>(d);
  const double scale = static_cast<double>(r) * (dd - 1.0) * std::max(log_alphabet_value, 0.0);
  // sum_{j>J} |Delta^(q)_{j-1}| / d^(j+1)
  auto tail = [&](double J) {
    if (q == 0) return tail_xj(1.0 / dd, J) / dd;
    if (q == 1) return tail_j_xj(1.0 / dd, J) / dd;
    const double qq = static_cast<double>(q);
    return (tail_xj(qq / dd, J) - tail_xj(1.0 / dd, J)) / ((qq - 1.0) * dd);
  };
  SeriesPlan plan;
  for (std::size_t J = 1;; ++J) {
    const double b = scale * tail(static_cast<double>(J));
    if (!std::isfinite(b)) throw Error("series tail bound is not finite");
    if (b < tail_tol || J >= 100000) {
      plan.terms = J;
      plan.tail_bound = b;
      return plan;
    }
  }
}

namespace {

// h = log k - r(d-1) sum_j D_j / d^(j+1) with D_j = |Delta^(q)_{j-1}| log k - log|P(Delta_{j-1})|,
// using r(d-1) sum_j |Delta^(q)_{j-1}| / d^(j+1) = 1.
EntropyReport series_from_deficits(const std::vector<double>& deficits, std::size_t k, std::size_t d,
                                   std::size_t r, const SeriesPlan& plan) {
  EntropyReport rep;
  rep.quantity = "entropy of E^" + std::to_string(r) + " x inner on the " + std::to_string(d) + "-tree";
  const double logk = log_alphabet(k);
  const double coeff = static_cast<double>(r) * static_cast<double>(d - 1);
  double acc = 0.0;
  double weight = 1.0 / static_cast<double>(d);
  rep.estimates.reserve(plan.terms);
  for (std::size_t j = 1; j <= plan.terms; ++j) {
    weight /= static_cast<double>(d);
    if (std::isinf(deficits[j - 1])) {
      rep.value = -kInf;
      rep.notes.push_back("inner ball at depth " + std::to_string(j - 1) + " has no admissible pattern");
      return rep;
    }
    acc += deficits[j - 1] * weight;
    rep.estimates.push_back(logk - coeff * acc);
  }
  rep.value = logk - coeff * acc;
  rep.terms = plan.terms;
  rep.tail_bound = plan.tail_bound;
  attach_sequence_diagnostics(rep);
  return rep;
}

}  // namespace

EntropyReport full_extension_entropy_tree(const TreeAxialSpec& inner, std::size_t d, std::size_t r, double tail_tol) {
  check_arity(inner, d, r);
  const std::size_t k = inner.alphabet();
  if (r == d) {
    EntropyReport rep;
    rep.quantity = "entropy of the full shift on the " + std::to_string(d) + "-tree";
    rep.closed_form = rep.value = log_alphabet(k);
    return rep;
  }
  if (k == 0) throw ConfigError("inner spec has an empty alphabet");
  const auto plan = plan_full_extension_series(d, r, log_alphabet(k), tail_tol);
  return series_from_deficits(ball_log_deficits(inner, plan.terms - 1), k, d, r, plan);
}

EntropyReport full_extension_entropy_tree(const std::function<double(std::size_t)>& log_ball_count,
                                          std::size_t alphabet, std::size_t d, std::size_t r, double tail_tol) {
  if (r < 1 || r > d) throw ConfigError("full extension needs 1 <= r <= d");
  if (alphabet == 0) throw ConfigError("inner alphabet must be nonempty");
  const double logk = log_alphabet(alphabet);
  if (r == d) {
    EntropyReport rep;
    rep.quantity = "entropy of the full shift on the " + std::to_string(d) + "-tree";
    rep.closed_form = rep.value = logk;
    return rep;
  }
  const auto plan = plan_full_extension_series(d, r, logk, tail_tol);
  std::vector<double> deficits;
  deficits.reserve(plan.terms);
  for (std::size_t j = 0; j < plan.terms; ++j) {
    const double l = log_ball_count(j);
    deficits.push_back(std::isinf(l) ? kInf : ball_size_double(d - r, j) * logk - l);
  }
  return series_from_deficits(deficits, alphabet, d, r, plan);
}

BigInt partition_product(const TreeAxialSpec& inner, std::size_t d, std::size_t r, std::size_t n) {
  check_arity(inner, d, r);
  const auto counts = ball_exact_totals(inner, n);
  BigInt prod = counts[n];
  for (std::size_t j = 1; j <= n; ++j) {
    const BigInt e = BigInt(r) * pow_big(BigInt(d), n - j);
    prod *= pow_big(counts[j - 1], static_cast<std::uint64_t>(e));
  }
  return prod;
}

bool verify_partition_identity(const TreeAxialSpec& inner, std::size_t d, std::size_t r, std::size_t n) {
  const auto lhs = count_ball(inner.with_full_axes(r), n, CountMode::Exact);
  return *lhs.exact_total == partition_product(inner, d, r, n);
}

double thm21_tree_entropy(unsigned m, unsigned n) { return m * std::log(2.0) / (2.0 * n); }

TreeAxialSpec thm21_tree_spec(unsigned m, unsigned n) {
  auto a = thm21_matrix(m, n);
  const std::size_t k = a.size();
  return TreeAxialSpec(k, {a, TransitionMatrix::identity(k)});
}

BigInt thm21_tree_recurrence_count(unsigned m, unsigned n, std::size_t k) {
  if (m == 0 || n == 0) throw ConfigError("thm21 parameters must be positive");
  // Phases: 0 is the free block, p = 1..n-1 the chain. The identity axis keeps
  // the phase, the other axis advances it mod n; a fresh free choice happens at
  // the root in phase 0 and at every step out of phase n-1.
  if (static_cast<double>(m) * std::pow(2.0, static_cast<double>(k + 1)) > 64e6)
    throw BudgetExceeded("thm21 recurrence count at depth " + std::to_string(k) + " exceeds the exact budget");
  BigInt total = 0;
  const BigInt base = BigInt(1) << m;
  for (unsigned j = 0; j < n; ++j) {
    std::vector<std::uint64_t> level(n, 0);
    level[j] = 1;
    std::uint64_t a = j == 0 ? 1 : 0;
    for (std::size_t l = 1; l <= k; ++l) {
      a += level[n - 1];
      std::vector<std::uint64_t> next(n, 0);
      for (unsigned p = 0; p < n; ++p) {
        next[p] += level[p];
        next[(p + 1) % n] += level[p];
      }
      level = std::move(next);
    }
    total += pow_big(base, a);
  }
  return total;
}

const char* to_string(GapClass g) {
  return g == GapClass::ZeroEntropy ? "ZeroEntropy" : "AtLeastHalfLog2";
}

GapClass isotropic_gap_classify(const TransitionMatrix& a) {
  const auto ess = essential_symbols(a);
  const auto e = a.masked(ess);
  const auto g = SparseGraph::from_matrix(e);
  for (const auto& comp : strongly_connected_components(g)) {
    if (!is_nontrivial(g, comp)) continue;
    for (auto v : comp)
      if (e.row_sum(v) >= 2) return GapClass::AtLeastHalfLog2;
  }
  return GapClass::ZeroEntropy;
}

EntropyReport entropy_estimate_tree(const TreeAxialSpec& spec, std::size_t n_max) {
  EntropyReport rep;
  rep.quantity = "log|P(Delta_n)| / |Delta_n| on the " + std::to_string(spec.d()) + "-tree";
  rep.first_index = 1;
  const auto deficits = ball_log_deficits(spec, n_max);
  const double logk = log_alphabet(spec.alphabet());
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double v = std::isinf(deficits[n]) ? -kInf : logk - deficits[n] / ball_size_double(spec.d(), n);
    rep.estimates.push_back(v);
  }
  if (!rep.estimates.empty()) rep.value = rep.estimates.back();
  if (spec.d() == 2) {
    const auto mn = match_thm21(spec.axes()[0]);
    if (mn && spec.axes()[1] == TransitionMatrix::identity(spec.alphabet())) {
      rep.closed_form = thm21_tree_entropy(mn->first, mn->second);
      rep.notes.push_back("closed form m log 2 / (2n) with (m, n) = (" + std::to_string(mn->first) + ", " +
                          std::to_string(mn->second) + ")");
    }
  }
  attach_sequence_diagnostics(rep);
  return rep;
}

namespace {

// Every symbol lies on a cycle and no edge joins two strongly connected
// components; permutation matrices such as identity(k) qualify.
bool union_of_irreducibles(const TransitionMatrix& a) {
  if (a.empty()) return false;
  const SparseGraph g = SparseGraph::from_matrix(a);
  const auto comps = strongly_connected_components(g);
  std::vector<std::size_t> owner(a.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (!is_nontrivial(g, comps[c])) return false;
    for (auto v : comps[c]) owner[v] = c;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a(i, j) && owner[i] != owner[j]) return false;
  return true;
}

}  // namespace

PermutationCheck permutation_characterization_check(const std::vector<TransitionMatrix>& axes,
                                                    std::size_t probe_depth) {
  if (axes.empty()) throw ConfigError("permutation check needs at least one axis");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (!union_of_irreducibles(axes[i]))
      throw PreconditionError("axis " + std::to_string(i) + " is not a disjoint union of irreducible components");
  }
  PermutationCheck pc;
  const TreeAxialSpec spec(axes);
  const std::size_t k = spec.alphabet();
  pc.all_permutation = true;
  for (const auto& a : axes) pc.all_permutation = pc.all_permutation && is_permutation(a);
  pc.counts = ball_exact_totals(spec, probe_depth);
  pc.counts_constant = true;
  for (const auto& c : pc.counts) pc.counts_constant = pc.counts_constant && c == k;
  pc.holds = pc.all_permutation == pc.counts_constant;

  std::ostringstream os;
  os << "permutation axes: " << (pc.all_permutation ? "yes" : "no") << "; counts";
  for (const auto& c : pc.counts) os << ' ' << c;
  if (!pc.holds) {
    os << (pc.all_permutation ? "; permutation axes but counts are not constant"
                              : "; counts constant without permutation axes");
  }
  pc.detail = os.str();
  return pc;
}

}  // namespace axent
