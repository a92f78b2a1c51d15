#include <cmath>

#include "doctest.h"
#include "rkhorizon/errors.hpp"
#include "rkhorizon/generators.hpp"
#include "rkhorizon/linalg.hpp"
#include "rkhorizon/solver.hpp"

using namespace rkhorizon;

TEST_CASE("low-rank gaussian products have the requested rank") {
  SUBCASE("full rank when r = min(m, n)") {
    const auto a = gen_low_rank_gaussian({12, 7, 7, 0.0, 60});
    CHECK(svd(a).rank == 7);
  }
  SUBCASE("rank 4 at 20 x 10") {
    const auto a = gen_low_rank_gaussian({20, 10, 4, 0.0, 61});
    CHECK(svd(a).rank == 4);
  }
  SUBCASE("the same seed reproduces the matrix exactly") {
    const auto a = gen_low_rank_gaussian({9, 6, 3, 0.0, 62});
    const auto b = gen_low_rank_gaussian({9, 6, 3, 0.0, 62});
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 6; ++j) CHECK(a(i, j) == b(i, j));
  }
  SUBCASE("invalid shapes are rejected") {
    CHECK_THROWS_AS(gen_low_rank_gaussian({5, 3, 4, 0.0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(gen_low_rank_gaussian({5, 3, 0, 0.0, 0}),
                    std::invalid_argument);
  }
}

TEST_CASE("rhs generation controls the off-column-space residual") {
  SUBCASE("beta = 0 gives a consistent system") {
    const auto a = gen_low_rank_gaussian({14, 8, 5, 0.0, 63});
    const auto f = svd(a);
    const Vector b = gen_rhs_with_residual(a, f, 0.0, 64);
    const Vector x_ls = min_norm_least_squares(f, b);
    CHECK(norm(multiply(a, x_ls) - b) <= 1e-10 * norm(b));
  }

  SUBCASE("the off-space component has norm exactly beta") {
    for (std::uint64_t t = 0; t < 50; ++t) {
      RngState rng(700 + t);
      const std::size_t m = 6 + rng.next_u64() % 20;
      const std::size_t n = 4 + rng.next_u64() % 12;
      const std::size_t r =
          1 + rng.next_u64() % (std::min(m, n) - (m == std::min(m, n) ? 1 : 0));
      const double beta = 0.5 + 10.0 * rng.next_uniform();
      const auto a = gen_low_rank_gaussian({m, n, r, beta, 800 + t});
      const auto f = svd(a);
      if (f.rank >= m) continue;
      const Vector b = gen_rhs_with_residual(a, f, beta, 900 + t);
      const Vector off = b - project_col_space(f, b);
      CHECK(std::abs(norm(off) - beta) <= 1e-10 * beta);
    }
  }

  SUBCASE("large beta values keep the relative control") {
    const auto a = gen_low_rank_gaussian({30, 12, 6, 0.0, 65});
    const auto f = svd(a);
    for (double beta : {10.0, 10000.0}) {
      const Vector b = gen_rhs_with_residual(a, f, beta, 66);
      const Vector off = b - project_col_space(f, b);
      CHECK(std::abs(norm(off) - beta) <= 1e-10 * beta);
    }
  }

  SUBCASE("full column space leaves no room for beta > 0") {
    const auto a = gen_low_rank_gaussian({5, 8, 5, 0.0, 67});
    const auto f = svd(a);
    REQUIRE(f.rank == 5);
    CHECK_THROWS_AS(gen_rhs_with_residual(a, f, 1.0, 68), NoComplement);
    CHECK(gen_rhs_with_residual(a, f, 0.0, 68).dim() == 5);
  }
}

TEST_CASE("reference point generation") {
  SyntheticSpec spec{16, 9, 5, 2.0, 69};
  DenseMatrix a = gen_low_rank_gaussian(spec);
  SvdFactors f = svd(a);
  Vector b = gen_rhs_with_residual(a, f, 2.0, 70);
  LinearSystem sys(std::move(a), std::move(b), std::move(f));

  SUBCASE("lstsq mode minimizes the residual against random perturbations") {
    const auto pts =
        gen_reference_points(9, ReferenceMode::lstsq, 0, sys, 71);
    const double best = norm(multiply(sys.matrix(), pts.x_star) - sys.rhs());
    RngState rng(72);
    for (int t = 0; t < 50; ++t) {
      Vector perturbed = pts.x_star;
      const double scale = t % 2 == 0 ? 1e-3 : 1.0;
      for (std::size_t i = 0; i < 9; ++i) {
        perturbed[i] += scale * rng.next_gaussian();
      }
      CHECK(norm(multiply(sys.matrix(), perturbed) - sys.rhs()) >=
            best - 1e-12);
    }
  }

  SUBCASE("smallest singular vector on a homogeneous system") {
    SyntheticSpec hspec{16, 9, 5, 0.0, 73};
    DenseMatrix ha = gen_low_rank_gaussian(hspec);
    LinearSystem hsys(std::move(ha), Vector(16));
    const SvdFactors& hf = hsys.svd();
    const auto pts = gen_reference_points(
        9, ReferenceMode::singular_vector, hf.rank, hsys, 74);
    const double residual = norm(multiply(hsys.matrix(), pts.x_star));
    CHECK(residual == doctest::Approx(hf.sigma_min).epsilon(1e-12));
  }

  SUBCASE("random mode reproduces with the seed") {
    const auto p1 = gen_reference_points(9, ReferenceMode::random, 0, sys, 75);
    const auto p2 = gen_reference_points(9, ReferenceMode::random, 0, sys, 75);
    for (std::size_t i = 0; i < 9; ++i) {
      CHECK(p1.x0[i] == p2.x0[i]);
      CHECK(p1.x_star[i] == p2.x_star[i]);
    }
  }

  SUBCASE("singular index outside the rank is rejected") {
    CHECK_THROWS_AS(gen_reference_points(9, ReferenceMode::singular_vector,
                                         17, sys, 76),
                    IndexOutOfRank);
    CHECK_THROWS_AS(gen_reference_points(9, ReferenceMode::singular_vector,
                                         0, sys, 76),
                    IndexOutOfRank);
  }
}
