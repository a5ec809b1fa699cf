#include <doctest.h>

#include <cmath>

#include "axent/errors.hpp"
#include "axent/grid_axial.hpp"
#include "axent/sft1d.hpp"
#include "generators.hpp"

using namespace axent;

namespace {

BigInt words(const TransitionMatrix& a, std::uint64_t n) { return count_words(a, n, CountMode::Exact).exact_value(); }

}  // namespace

TEST_CASE("essentialize keeps essential matrices and kills nilpotent chains") {
  CHECK(essentialize(TransitionMatrix::full(2)) == TransitionMatrix::full(2));
  CHECK(essentialize(TransitionMatrix::from_rows({{0, 1}, {0, 0}})).empty());
  const auto a12 = TransitionMatrix::from_rows({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
  CHECK(thm21_matrix(1, 2) == a12);
  CHECK(essentialize(a12) == a12);
}

TEST_CASE("essentialize drops rows with no future but keeps dead-end columns reachable") {
  // 0 -> 0, 0 -> 1, 1 -> nothing: symbol 1 dies, 0 stays with its self-loop.
  const auto a = TransitionMatrix::from_rows({{1, 1}, {0, 0}});
  const auto e = essentialize(a);
  REQUIRE(e.size() == 1);
  CHECK(e(0, 0));
  // A symbol with no incoming edge but a future survives.
  const auto b = TransitionMatrix::from_rows({{1, 0}, {1, 0}});
  CHECK(essentialize(b).size() == 2);
}

TEST_CASE("word counts of small shifts") {
  CHECK(words(TransitionMatrix::full(2), 3) == 8);
  const auto g = TransitionMatrix::golden_mean();
  CHECK(words(g, 1) == 2);
  CHECK(words(g, 2) == 3);
  CHECK(words(g, 3) == 5);
  const std::vector<int> fib{2, 3, 5, 8, 13, 21, 34};
  for (std::size_t n = 1; n <= fib.size(); ++n) CHECK(words(g, n) == fib[n - 1]);
  CHECK(words(thm21_matrix(1, 2), 2) == 4);
  CHECK(count_words(TransitionMatrix::from_rows({{0, 1}, {0, 0}}), 5).is_zero());
  CHECK_THROWS_AS(count_words(g, 0), std::invalid_argument);
}

TEST_CASE("log-domain counts track exact counts") {
  const auto g = TransitionMatrix::golden_mean();
  for (std::uint64_t n : {1u, 10u, 100u, 256u}) {
    const auto ex = count_words(g, n, CountMode::Exact);
    const auto lg = count_words(g, n, CountMode::Log);
    CHECK_FALSE(lg.is_exact());
    CHECK(lg.log() == doctest::Approx(ex.log()).epsilon(1e-13));
  }
  const auto big = count_words(g, 5000);
  CHECK_FALSE(big.is_exact());
  CHECK(big.log() / 5000.0 == doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-3));
}

TEST_CASE("log power sums are entry sums of powers") {
  const auto g = TransitionMatrix::golden_mean();
  const auto ls = log_power_sums(g, 5);
  // |A^i| = F_{i+3}: 3, 5, 8, 13, 21
  const std::vector<double> expect{3, 5, 8, 13, 21};
  for (std::size_t i = 0; i < 5; ++i) CHECK(ls[i] == doctest::Approx(std::log(expect[i])).epsilon(1e-14));
}

TEST_CASE("spectral data of the reference matrices") {
  CHECK(spectral(TransitionMatrix::identity(2)).perron_value == doctest::Approx(1.0).epsilon(1e-12));
  const double rho = (1 + std::sqrt(5.0)) / 2;
  CHECK(spectral(TransitionMatrix::golden_mean()).perron_value == doctest::Approx(rho).epsilon(1e-12));
  for (unsigned m = 1; m <= 3; ++m)
    for (unsigned n = 1; n <= 4; ++n)
      CHECK(spectral(thm21_matrix(m, n)).perron_value == doctest::Approx(std::pow(2.0, double(m) / n)).epsilon(1e-11));
  CHECK_THROWS_AS(spectral(TransitionMatrix()), PreconditionError);
  CHECK_THROWS_AS(spectral(TransitionMatrix::from_rows({{0, 1}, {0, 0}})), PreconditionError);
}

TEST_CASE("spectral handles periodic and reducible matrices") {
  CHECK(spectral(TransitionMatrix::cyclic(5)).perron_value == doctest::Approx(1.0).epsilon(1e-12));
  // Jordan-type block: two self-loops joined by an edge.
  CHECK(spectral(TransitionMatrix::from_rows({{1, 1}, {0, 1}})).perron_value == doctest::Approx(1.0).epsilon(1e-12));
  // Dominant component downstream of a weaker one.
  const auto a = TransitionMatrix::from_rows({{1, 1, 0}, {0, 1, 1}, {0, 1, 1}});
  CHECK(spectral(a).perron_value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("property: spectral residual and nonnegativity on random essential matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + trial % 6;
    const auto a = gen::random_essential(rng, k, 0.4);
    const auto sd = spectral(a);
    CHECK(sd.perron_value >= 0.0);
    double res = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(sd.right_vec[i] >= 0.0);
      CHECK(sd.left_vec[i] >= 0.0);
      double av = 0.0;
      for (std::size_t j = 0; j < k; ++j)
        if (a(i, j)) av += sd.right_vec[j];
      res = std::max(res, std::abs(av - sd.perron_value * sd.right_vec[i]));
    }
    CHECK(res <= 1e-9 * std::max(1.0, sd.perron_value));
  }
}

TEST_CASE("classification examples") {
  CHECK(classify(TransitionMatrix::golden_mean()) == Irreducibility::Irreducible);
  CHECK(classify(TransitionMatrix::from_rows({{0, 1}, {0, 0}})) == Irreducibility::NoIrreducibleComponent);
  CHECK(classify(TransitionMatrix::from_rows({{1, 0}, {1, 0}})) == Irreducibility::ReducibleWithIrreducibleComponent);
  CHECK(std::string(to_string(Irreducibility::Irreducible)) == "Irreducible");
}

TEST_CASE("permutation and transitivity checks") {
  CHECK(is_permutation(TransitionMatrix::identity(4)));
  CHECK_FALSE(is_permutation(TransitionMatrix::golden_mean()));
  CHECK(is_permutation(TransitionMatrix::from_rows({{0, 1}, {1, 0}})));
  CHECK(transitive_with_period(TransitionMatrix::golden_mean()));
  CHECK_FALSE(transitive_with_period(TransitionMatrix()));
  for (unsigned m = 1; m <= 3; ++m)
    for (unsigned n = 1; n <= 5; ++n) CHECK(transitive_with_period(thm21_matrix(m, n)));
  CHECK(period(TransitionMatrix::cyclic(4)) == 4);
  CHECK(is_primitive(TransitionMatrix::golden_mean()));
  CHECK_FALSE(is_primitive(TransitionMatrix::identity(2)));
}

TEST_CASE("malformed matrices are rejected") {
  CHECK_THROWS_AS(TransitionMatrix::from_rows({{1, 0}, {1}}), ConfigError);
  CHECK_THROWS_AS(TransitionMatrix::from_rows({{2, 0}, {1, 0}}), ConfigError);
}

TEST_CASE("property: submultiplicativity of word counts") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = gen::random_essential(rng, 2 + trial % 3, 0.5);
    const auto w = word_count_sequence(a, 24, CountMode::Exact);
    for (std::size_t m = 1; m <= 12; ++m)
      for (std::size_t n = 1; n <= 12; ++n)
        CHECK(w[m + n - 1].exact_value() <= w[m - 1].exact_value() * w[n - 1].exact_value());
  }
}

TEST_CASE("property: essentialize is idempotent and preserves word counts") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = gen::random_matrix(rng, 1 + trial % 5, 0.35);
    const auto e = essentialize(a);
    CHECK(essentialize(e) == e);
    for (std::uint64_t n = 1; n <= 8; ++n) CHECK(words(a, n) == words(e, n));
    if (classify(a) == Irreducibility::NoIrreducibleComponent) CHECK(e.empty());
  }
}

TEST_CASE("property: permutation matrices have constant word counts") {
  for (std::size_t k = 1; k <= 4; ++k)
    for (const auto& a : gen::all_matrices(k <= 3 ? k : 0)) {
      if (!is_permutation(a)) continue;
      for (std::uint64_t n = 1; n <= 10; ++n) CHECK(words(a, n) == a.size());
    }
  CHECK(words(TransitionMatrix::cyclic(7), 30) == 7);
}

TEST_CASE("property: growth of word counts matches the Perron value") {
  // Primitive matrices: successive ratios converge geometrically.
  for (const auto& a : {TransitionMatrix::golden_mean(), TransitionMatrix::full(3),
                        TransitionMatrix::from_rows({{1, 1, 0}, {0, 0, 1}, {1, 0, 1}})}) {
    const double h = entropy(a);
    const auto w = word_count_sequence(a, 64, CountMode::Exact);
    CHECK(std::abs(w[63].log() - w[62].log() - h) <= 10e-12);
  }
  // Every essential matrix: log|P(Z_n)|/n approaches log(lambda) at rate O(log n / n).
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = gen::random_essential(rng, 1 + trial % 5, 0.45);
    const double h = entropy(a);
    const auto c = count_words(a, 64, CountMode::Exact);
    const double k = static_cast<double>(a.size());
    CHECK(std::abs(c.log() / 64.0 - h) <= (std::log(k) + a.size() * std::log(65.0)) / 64.0 + 1e-12);
  }
}
