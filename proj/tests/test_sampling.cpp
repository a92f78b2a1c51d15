#include <cmath>
#include <vector>

#include "doctest.h"
#include "rkhorizon/errors.hpp"
#include "rkhorizon/generators.hpp"
#include "rkhorizon/linalg.hpp"
#include "rkhorizon/sampling.hpp"

using namespace rkhorizon;

namespace {

DenseMatrix from_rows(std::vector<std::vector<double>> rows) {
  DenseMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST_CASE("row probabilities proportional to squared norms") {
  const auto dist = build_row_distribution(from_rows({{1, 0}, {0, 2}}));
  CHECK(dist.total == doctest::Approx(5.0));
  CHECK(dist.cumulative[0] == doctest::Approx(1.0));
  CHECK(dist.cumulative[1] == doctest::Approx(5.0));
  CHECK(dist.active_rows == std::vector<std::size_t>{0, 1});
}

TEST_CASE("identical rows sample uniformly") {
  const auto dist =
      build_row_distribution(from_rows({{1, 0}, {1, 0}, {1, 0}}));
  CHECK(dist.total == doctest::Approx(3.0));
  for (std::size_t i = 0; i < 3; ++i) {
    const double lo = i == 0 ? 0.0 : dist.cumulative[i - 1];
    CHECK(dist.cumulative[i] - lo == doctest::Approx(1.0));
  }
}

TEST_CASE("zero rows are excluded from the distribution") {
  const auto dist =
      build_row_distribution(from_rows({{1, 0}, {0, 0}, {0, 2}}));
  CHECK(dist.active_rows == std::vector<std::size_t>{0, 2});
  CHECK(dist.total == doctest::Approx(5.0));
}

TEST_CASE("an all-zero matrix has no distribution") {
  CHECK_THROWS_AS(build_row_distribution(DenseMatrix(3, 2)), AllZeroMatrix);
}

TEST_CASE("a single active row is always chosen") {
  const auto dist = build_row_distribution(from_rows({{0, 0}, {0, 3}}));
  RngState rng(1);
  for (int i = 0; i < 100; ++i) CHECK(sample_row(dist, rng) == 1);
}

TEST_CASE("empirical frequencies match the target distribution") {
  const auto dist = build_row_distribution(from_rows({{1, 0}, {0, 2}}));
  RngState rng(123);
  const std::size_t draws = 1'000'000;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < draws; ++i) {
    if (sample_row(dist, rng) == 1) ++hits;
  }
  const double freq = static_cast<double>(hits) / draws;
  // Binomial standard error is 4e-4; 0.002 is five sigma.
  CHECK(std::abs(freq - 0.8) <= 0.002);
}

TEST_CASE("fixed seeds replay identical index streams") {
  RngState seeder(99);
  const DenseMatrix a = gaussian_matrix(5, 4, seeder);
  const auto dist = build_row_distribution(a);

  RngState r1(42);
  RngState r2(42);
  for (int i = 0; i < 10; ++i) {
    CHECK(sample_row(dist, r1) == sample_row(dist, r2));
  }
}

TEST_CASE("sampling consumes exactly one variate per draw") {
  RngState seeder(5);
  const DenseMatrix a = gaussian_matrix(6, 3, seeder);
  const auto dist = build_row_distribution(a);

  RngState sampled(7);
  RngState raw(7);
  sample_row(dist, sampled);
  raw.next_u64();
  CHECK(sampled.next_u64() == raw.next_u64());
}

TEST_CASE("chi-square goodness of fit at significance 1e-6") {
  // Critical values of the chi-square distribution at 1 - 1e-6, frozen from
  // an external statistics package.
  struct Setup {
    std::size_t rows;
    double critical;
  };
  for (const Setup setup : {Setup{37, 91.50239105659848},
                            Setup{100, 180.79201532577878}}) {
    RngState seeder(2024 + setup.rows);
    const DenseMatrix a = gaussian_matrix(setup.rows, 8, seeder);
    const auto dist = build_row_distribution(a);
    REQUIRE(dist.active_rows.size() == setup.rows);

    const std::size_t draws = 100'000;
    std::vector<std::size_t> counts(setup.rows, 0);
    RngState rng(31337);
    for (std::size_t i = 0; i < draws; ++i) ++counts[sample_row(dist, rng)];

    double chi_sq = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < setup.rows; ++i) {
      const double expanse = dist.cumulative[i] - prev;
      prev = dist.cumulative[i];
      const double expected = draws * expanse / dist.total;
      const double d = counts[i] - expected;
      chi_sq += d * d / expected;
    }
    CHECK(chi_sq < setup.critical);
  }
}

TEST_CASE("gaussian helper is deterministic and roughly standard") {
  RngState r1(55);
  RngState r2(55);
  for (int i = 0; i < 10; ++i) {
    CHECK(r1.next_gaussian() == r2.next_gaussian());
  }
  RngState rng(56);
  double sum = 0.0, sum_sq = 0.0;
  const int n = 200'000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.next_gaussian();
    sum += g;
    sum_sq += g * g;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sum_sq / n - 1.0) < 0.02);
}
