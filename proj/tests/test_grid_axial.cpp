#include <doctest.h>

#include <cmath>

#include "axent/errors.hpp"
#include "axent/grid_axial.hpp"
#include "axent/oracle.hpp"
#include "axent/sft1d.hpp"
#include "generators.hpp"

using namespace axent;

namespace {

BigInt box_count(const GridAxialSpec& s, std::vector<std::size_t> dims, CountPath path = CountPath::Auto) {
  return count_box(s, Box{std::move(dims)}, path).exact_value();
}

const double kLog2 = std::log(2.0);

}  // namespace

TEST_CASE("box counts of reference products") {
  const auto full = GridAxialSpec::isotropic(TransitionMatrix::full(2), 2);
  CHECK(box_count(full, {2, 2}) == 16);
  const auto hard = GridAxialSpec::isotropic(TransitionMatrix::golden_mean(), 2);
  CHECK(box_count(hard, {2, 2}) == 7);
  CHECK(box_count(hard, {2, 2}, CountPath::Backtrack) == 7);
  const auto a12 = GridAxialSpec::isotropic(thm21_matrix(1, 2), 2);
  CHECK(box_count(a12, {2, 1}) == 4);
  // Three axes: hard cube 2x2x2 against the oracle.
  const auto cube = GridAxialSpec::isotropic(TransitionMatrix::golden_mean(), 3);
  CHECK(box_count(cube, {2, 2, 2}) == brute_grid(cube, Box{{2, 2, 2}}));
}

TEST_CASE("bad boxes and budgets") {
  const auto hard = GridAxialSpec::isotropic(TransitionMatrix::golden_mean(), 2);
  CHECK_THROWS_AS(count_box(hard, Box{{2, 2, 2}}), ConfigError);
  CHECK_THROWS_AS(count_box(hard, Box{{0, 2}}), ConfigError);
  GridBudget tiny;
  tiny.max_cells = 4;
  CHECK_THROWS_AS(count_box(hard, Box{{3, 3}}, CountPath::Backtrack, tiny), BudgetExceeded);
  tiny.max_width = 2;
  CHECK_THROWS_AS(build_column_transfer(hard, 3, 0, tiny), BudgetExceeded);
  CHECK_THROWS_AS(GridAxialSpec(2, {TransitionMatrix::full(3)}), ConfigError);
}

TEST_CASE("thm21 matrices") {
  CHECK(thm21_matrix(1, 1) == TransitionMatrix::full(2));
  const auto a23 = thm21_matrix(2, 3);
  REQUIRE(a23.size() == 6);
  const std::vector<std::size_t> sums{1, 1, 1, 1, 1, 4};
  for (std::size_t i = 0; i < 6; ++i) CHECK(a23.row_sum(i) == sums[i]);
  CHECK(match_thm21(a23) == std::make_pair(2u, 3u));
  CHECK_FALSE(match_thm21(TransitionMatrix::golden_mean()).has_value());
  CHECK_THROWS_AS(thm21_matrix(0, 1), ConfigError);
  CHECK(entropy_closed_thm21(3, 4) == doctest::Approx(3 * kLog2 / 4));
}

TEST_CASE("property: thm21 count identity is exact") {
  for (unsigned m = 1; m <= 2; ++m)
    for (unsigned n = 1; n <= 3; ++n)
      for (unsigned k = 1; k <= 2; ++k) CHECK(verify_thm21_count(m, n, k));
  const auto a12 = GridAxialSpec::isotropic(thm21_matrix(1, 2), 2);
  CHECK(box_count(a12, {4, 2}) == 32);
}

TEST_CASE("property: backtracking equals column transfer on random 2-D specs") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const GridAxialSpec s(k, {gen::random_matrix(rng, k, 0.6), gen::random_matrix(rng, k, 0.6)});
    for (std::size_t a = 1; a <= 4; ++a)
      for (std::size_t b = 1; b <= 4; ++b)
        CHECK(box_count(s, {a, b}, CountPath::Backtrack) == box_count(s, {a, b}, CountPath::Transfer));
  }
}

TEST_CASE("property: isotropic counts are symmetric under transposition") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = GridAxialSpec::isotropic(gen::random_matrix(rng, 2 + trial % 2, 0.6), 2);
    for (std::size_t a = 1; a <= 4; ++a)
      for (std::size_t b = a + 1; b <= 5; ++b) CHECK(box_count(s, {a, b}) == box_count(s, {b, a}));
  }
}

TEST_CASE("property: counts are submultiplicative under box concatenation") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 2 + trial % 2;
    const GridAxialSpec s(k, {gen::random_essential(rng, k, 0.6), gen::random_essential(rng, k, 0.6)});
    for (std::size_t w = 1; w <= 3; ++w)
      for (std::size_t n1 = 1; n1 <= 3; ++n1)
        for (std::size_t n2 = 1; n2 <= 3; ++n2)
          CHECK(box_count(s, {n1 + n2, w}) <= box_count(s, {n1, w}) * box_count(s, {n2, w}));
  }
}

TEST_CASE("strip estimates") {
  const auto full = entropy_estimate_grid(GridAxialSpec::isotropic(TransitionMatrix::full(2), 2), 5);
  for (double h : full.estimates) CHECK(h == doctest::Approx(kLog2).epsilon(1e-12));

  const auto hard = entropy_estimate_grid(GridAxialSpec::isotropic(TransitionMatrix::golden_mean(), 2), 8);
  REQUIRE(hard.value.has_value());
  CHECK(*hard.value >= 0.40);
  CHECK(*hard.value <= 0.45);

  for (auto [m, n] : {std::pair{1u, 1u}, {1u, 2u}, {2u, 3u}}) {
    const auto rep = entropy_estimate_grid(GridAxialSpec::isotropic(thm21_matrix(m, n), 2), 4);
    REQUIRE(rep.closed_form.has_value());
    CHECK(std::abs(*rep.value - *rep.closed_form) <= 1e-6);
  }
}

TEST_CASE("property: E (x) X strips carry exactly log lambda_X") {
  std::mt19937_64 rng(24);
  auto mats = gen::named_matrices();
  for (int i = 0; i < 10; ++i) mats.push_back(gen::random_essential(rng, 2 + i % 2, 0.5));
  for (const auto& x : mats) {
    const GridAxialSpec s(x.size(), {TransitionMatrix::full(x.size()), x});
    const double h = entropy(x);
    const auto rep = entropy_estimate_grid(s, 5, 1);
    for (double hw : rep.estimates) CHECK(std::abs(hw - h) <= 1e-12);
  }
}

TEST_CASE("full extension entropy on the grid") {
  const auto golden = GridAxialSpec({TransitionMatrix::golden_mean()});
  CHECK(*full_extension_entropy_grid(golden, 1).value ==
        doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-12));
  const auto a12 = GridAxialSpec({thm21_matrix(1, 2)});
  CHECK(*full_extension_entropy_grid(a12, 1).value == doctest::Approx(kLog2 / 2).epsilon(1e-12));
  const GridAxialSpec point(2, {});
  CHECK(*full_extension_entropy_grid(point, 2).value == doctest::Approx(kLog2));
  CHECK_THROWS_AS(full_extension_entropy_grid(golden, 0), ConfigError);
}
