#include <doctest.h>

#include <cmath>

#include "axent/cayley.hpp"
#include "axent/errors.hpp"
#include "axent/grid_axial.hpp"
#include "axent/oracle.hpp"
#include "axent/tree_axial.hpp"
#include "generators.hpp"

using namespace axent;

namespace {

const double kLog2 = std::log(2.0);

BigInt ball(const TreeAxialSpec& s, std::size_t n) { return *count_ball(s, n, CountMode::Exact).exact_total; }

}  // namespace

TEST_CASE("ball counts of reference products") {
  CHECK(ball(TreeAxialSpec::isotropic(TransitionMatrix::full(2), 2), 1) == 8);
  CHECK(ball(TreeAxialSpec::isotropic(TransitionMatrix::golden_mean(), 2), 1) == 5);
  const TreeAxialSpec mixed({thm21_matrix(1, 2), TransitionMatrix::identity(3)});
  CHECK(ball(mixed, 1) == 4);
  CHECK(ball(TreeAxialSpec::isotropic(TransitionMatrix::from_rows({{0, 1}, {0, 0}}), 2), 3) == 0);
  const auto bc = count_ball(TreeAxialSpec::isotropic(TransitionMatrix::golden_mean(), 2), 0, CountMode::Exact);
  CHECK(*bc.exact_total == 2);
  CHECK(bc.log_deficit == doctest::Approx(0.0));
}

TEST_CASE("log-domain DP agrees with the exact DP") {
  const auto s = TreeAxialSpec::isotropic(TransitionMatrix::golden_mean(), 3);
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto ex = count_ball(s, n, CountMode::Exact);
    const auto lg = count_ball(s, n, CountMode::Log);
    CHECK_FALSE(lg.exact_total.has_value());
    CHECK(lg.log_total == doctest::Approx(ex.total().log()).epsilon(1e-12));
    CHECK(lg.log_deficit == doctest::Approx(ex.log_deficit).epsilon(1e-9));
  }
  const auto full = count_ball(TreeAxialSpec::isotropic(TransitionMatrix::full(3), 2), 40, CountMode::Log);
  CHECK(full.log_deficit == 0.0);
}

TEST_CASE("ball size bookkeeping") {
  for (std::size_t d = 2; d <= 5; ++d)
    for (std::size_t n = 0; n <= 12; ++n) {
      BigInt expect = (pow_big(BigInt(d), n + 1) - 1) / (d - 1);
      CHECK(ball_size(d, n) == expect);
      CHECK(ball_size_double(d, n) == doctest::Approx(static_cast<double>(expect)));
    }
  for (std::size_t n = 0; n <= 10; ++n) CHECK(ball_size(1, n) == n + 1);
  CHECK(ball_size(0, 7) == 1);
  // Full shifts count alphabet^|Delta_n| exactly.
  for (std::size_t d = 1; d <= 3; ++d)
    for (std::size_t n = 0; n <= 4; ++n)
      CHECK(ball(TreeAxialSpec::isotropic(TransitionMatrix::full(2), d), n) ==
            pow_big(BigInt(2), static_cast<std::uint64_t>(ball_size(d, n))));
}

TEST_CASE("property: ball DP equals the brute-force oracle") {
  std::mt19937_64 rng(31);
  int compared = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const std::size_t d = 1 + (trial / 3) % 3;
    std::vector<TransitionMatrix> axes;
    for (std::size_t i = 0; i < d; ++i) axes.push_back(gen::random_matrix(rng, k, 0.55));
    const TreeAxialSpec s(k, axes);
    for (std::size_t n = 0; n <= 3; ++n) {
      const double cells = static_cast<double>(ball_size(d, n));
      if (cells > 24.0 || cells * std::log2(static_cast<double>(k)) > 20.0) break;
      CHECK(ball(s, n) == brute_tree(MarkovCayleyTree::full_tree(d), axes, n));
      ++compared;
    }
  }
  CHECK(compared >= 100);
}

TEST_CASE("full extension series reference values") {
  const TreeAxialSpec point(2, {});
  CHECK(*full_extension_entropy_tree(point, 2, 2).value == doctest::Approx(kLog2).epsilon(1e-14));
  const TreeAxialSpec ident({TransitionMatrix::identity(2)});
  CHECK(std::abs(*full_extension_entropy_tree(ident, 2, 1, 1e-13).value - kLog2 / 2) <= 1e-12);
  // |P(Delta_0)| = 2, |P(Delta_j)| = 1 afterwards.
  auto minimal = [](std::size_t j) { return j == 0 ? kLog2 : 0.0; };
  CHECK(std::abs(*full_extension_entropy_tree(minimal, 2, 2, 1, 1e-13).value - kLog2 / 4) <= 1e-12);
  const TreeAxialSpec full({TransitionMatrix::full(2)});
  CHECK(*full_extension_entropy_tree(full, 2, 1).value == kLog2);
  CHECK_THROWS(plan_full_extension_series(2, 3, kLog2, 1e-9));
}

TEST_CASE("series tail bound controls truncation") {
  for (std::size_t d = 2; d <= 4; ++d)
    for (std::size_t r = 1; r < d; ++r)
      for (double tol : {1e-6, 1e-9, 1e-12}) {
        const auto plan = plan_full_extension_series(d, r, std::log(3.0), tol);
        CHECK(plan.tail_bound < tol);
        CHECK(plan.terms >= 1);
      }
}

TEST_CASE("property: series agrees with the DP on the assembled product") {
  struct Case {
    TreeAxialSpec inner;
    std::size_t d, r;
  };
  const std::vector<Case> cases{
      {TreeAxialSpec({TransitionMatrix::golden_mean()}), 2, 1},
      {TreeAxialSpec({TransitionMatrix::identity(2)}), 2, 1},
      {TreeAxialSpec({TransitionMatrix::golden_mean()}), 3, 2},
      {TreeAxialSpec({TransitionMatrix::golden_mean(), TransitionMatrix::golden_mean()}), 3, 1},
      {TreeAxialSpec({thm21_matrix(1, 2)}), 2, 1},
  };
  for (const auto& c : cases) {
    const auto series = full_extension_entropy_tree(c.inner, c.d, c.r, 1e-10);
    const auto dp = entropy_estimate_tree(c.inner.with_full_axes(c.r), c.d == 2 ? 24 : 15);
    // The depth-n estimate approaches the limit like C/n; the tail of the
    // sequence bounds the remaining distance.
    const double slack = 1e-10 + 2.0 * static_cast<double>(dp.estimates.size()) * *dp.cauchy_diff;
    CHECK(std::abs(*series.value - *dp.value) <= slack);
  }
}

TEST_CASE("property: partition identity is exact") {
  const std::vector<TransitionMatrix> inners{TransitionMatrix::identity(2), TransitionMatrix::golden_mean(),
                                             TransitionMatrix::full(2), TransitionMatrix::cyclic(3)};
  for (std::size_t d = 2; d <= 3; ++d)
    for (std::size_t r = 1; r <= d; ++r)
      for (const auto& x : inners) {
        const TreeAxialSpec inner(x.size(), std::vector<TransitionMatrix>(d - r, x));
        for (std::size_t n = 1; n <= 4; ++n) CHECK(verify_partition_identity(inner, d, r, n));
      }
  const TreeAxialSpec ident({TransitionMatrix::identity(2)});
  CHECK(partition_product(ident, 2, 1, 1) == 4);
}

TEST_CASE("thm21 tree family") {
  CHECK(thm21_tree_entropy(1, 1) == doctest::Approx(kLog2 / 2));
  CHECK(thm21_tree_entropy(1, 2) == doctest::Approx(kLog2 / 4));
  CHECK(thm21_tree_entropy(2, 3) == doctest::Approx(kLog2 / 3));
  for (unsigned m = 1; m <= 3; ++m)
    for (unsigned n = 1; n <= 4; ++n)
      for (std::size_t k = 0; k <= 6; ++k) CHECK(thm21_tree_recurrence_count(m, n, k) == ball(thm21_tree_spec(m, n), k));
  const auto rep = entropy_estimate_tree(TreeAxialSpec({thm21_matrix(1, 2), TransitionMatrix::identity(3)}), 25);
  REQUIRE(rep.closed_form.has_value());
  CHECK(std::abs(*rep.value - kLog2 / 4) <= 1e-3);
}

TEST_CASE("gap classification") {
  CHECK(isotropic_gap_classify(TransitionMatrix::identity(2)) == GapClass::ZeroEntropy);
  CHECK(isotropic_gap_classify(TransitionMatrix::golden_mean()) == GapClass::AtLeastHalfLog2);
  CHECK(isotropic_gap_classify(TransitionMatrix::from_rows({{0, 1}, {0, 0}})) == GapClass::ZeroEntropy);
  CHECK(std::string(to_string(GapClass::ZeroEntropy)) == "ZeroEntropy");
  const auto gm = entropy_estimate_tree(TreeAxialSpec::isotropic(TransitionMatrix::golden_mean(), 2), 20);
  CHECK(*gm.value >= kLog2 / 2 - 1e-3);
  const auto full = entropy_estimate_tree(TreeAxialSpec::isotropic(TransitionMatrix::full(2), 2), 10);
  for (double h : full.estimates) CHECK(h == doctest::Approx(kLog2).epsilon(1e-13));
}

TEST_CASE("permutation characterization") {
  const auto both = permutation_characterization_check({TransitionMatrix::identity(2), TransitionMatrix::cyclic(2)});
  CHECK(both.all_permutation);
  CHECK(both.counts_constant);
  CHECK(both.holds);
  const auto golden = permutation_characterization_check({TransitionMatrix::golden_mean()});
  CHECK_FALSE(golden.all_permutation);
  CHECK_FALSE(golden.counts_constant);
  CHECK(golden.holds);
  REQUIRE(golden.counts.size() >= 2);
  CHECK(golden.counts[0] == 2);
  const auto cyc = permutation_characterization_check({TransitionMatrix::cyclic(3)});
  CHECK(cyc.holds);
  for (const auto& c : cyc.counts) CHECK(c == 3);
  CHECK_THROWS_AS(permutation_characterization_check({TransitionMatrix::from_rows({{1, 1}, {0, 1}})}),
                  PreconditionError);
}
