#include <cmath>

#include "doctest.h"
#include "rkhorizon/bounds.hpp"
#include "rkhorizon/errors.hpp"
#include "rkhorizon/generators.hpp"
#include "rkhorizon/solver.hpp"

using namespace rkhorizon;

namespace {

DenseMatrix from_rows(std::vector<std::vector<double>> rows) {
  DenseMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

LinearSystem random_system(std::size_t m, std::size_t n, std::size_t r,
                           double beta, std::uint64_t seed) {
  SyntheticSpec spec{m, n, r, beta, seed};
  DenseMatrix a = gen_low_rank_gaussian(spec);
  SvdFactors f = svd(a);
  Vector b = gen_rhs_with_residual(a, f, beta, seed + 1);
  return LinearSystem(std::move(a), std::move(b), std::move(f));
}

// Gram-Schmidt orthonormal columns, for custom shape tests.
DenseMatrix random_orthonormal(std::size_t rows, std::size_t cols,
                               RngState& rng) {
  DenseMatrix q(rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    Vector v = gaussian_vector(rows, rng);
    for (int round = 0; round < 2; ++round) {
      for (std::size_t p = 0; p < c; ++p) {
        double proj = 0.0;
        for (std::size_t i = 0; i < rows; ++i) proj += q(i, p) * v[i];
        for (std::size_t i = 0; i < rows; ++i) v[i] -= proj * q(i, p);
      }
    }
    const double len = norm(v);
    for (std::size_t i = 0; i < rows; ++i) q(i, c) = v[i] / len;
  }
  return q;
}

}  // namespace

TEST_CASE("frames project the start and reference points") {
  SUBCASE("a start point in the row space has no null part") {
    LinearSystem sys = random_system(10, 6, 3, 2.0, 10);
    RngState rng(11);
    const Vector x0 = project_row_space(sys.svd(), gaussian_vector(6, rng));
    const Vector x_star = gaussian_vector(6, rng);
    const ReferenceFrame frame = make_frame(sys, x0, x_star);
    CHECK(norm(frame.x0_null) <= 1e-10);
    CHECK(norm(frame.center - frame.x_star_row) <= 1e-10);
  }

  SUBCASE("full column rank leaves no null space") {
    LinearSystem sys = random_system(12, 5, 5, 2.0, 12);
    RngState rng(13);
    const ReferenceFrame frame =
        make_frame(sys, gaussian_vector(5, rng), gaussian_vector(5, rng));
    CHECK(norm(frame.x0_null) <= 1e-10);
  }

  SUBCASE("hand-computable rank-1 diagonal") {
    LinearSystem sys(from_rows({{1, 0}, {0, 0}}), Vector{1.0, 1.0});
    const ReferenceFrame frame =
        make_frame(sys, Vector{5.0, 7.0}, Vector{1.0, 0.0});
    CHECK(frame.center[0] == doctest::Approx(1.0));
    CHECK(frame.center[1] == doctest::Approx(7.0));
    CHECK(frame.residual_norm == doctest::Approx(1.0));
  }

  SUBCASE("center is exactly the componentwise sum") {
    LinearSystem sys = random_system(8, 6, 4, 1.0, 14);
    RngState rng(15);
    const ReferenceFrame frame =
        make_frame(sys, gaussian_vector(6, rng), gaussian_vector(6, rng));
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(frame.center[i] == frame.x0_null[i] + frame.x_star_row[i]);
    }
  }
}

TEST_CASE("mse bound curve closed form") {
  SUBCASE("consistent system with the least squares reference decays to zero") {
    LinearSystem sys = random_system(10, 6, 3, 0.0, 20);
    const Vector x_ls = min_norm_least_squares(sys.svd(), sys.rhs());
    RngState rng(21);
    const ReferenceFrame frame = make_frame(sys, gaussian_vector(6, rng), x_ls);
    const auto curve = mse_bound_curve(sys, frame, {0, 10, 100});
    CHECK(curve.horizon <= 1e-20);
    CHECK(curve.values[2] < curve.values[1]);
    CHECK(curve.values[1] < curve.values[0]);
  }

  SUBCASE("identity system halves the bound every step") {
    LinearSystem sys(DenseMatrix::identity(2), Vector{0.0, 0.0});
    const ReferenceFrame frame =
        make_frame(sys, Vector{1.0, 0.0}, Vector{0.0, 0.0});
    const auto curve = mse_bound_curve(sys, frame, {0, 1, 2, 3, 10});
    CHECK(curve.values[0] == doctest::Approx(1.0));
    CHECK(curve.values[1] == doctest::Approx(0.5));
    CHECK(curve.values[2] == doctest::Approx(0.25));
    CHECK(curve.values[4] == doctest::Approx(std::pow(0.5, 10)));
    CHECK(curve.horizon == doctest::Approx(0.0));
  }

  SUBCASE("k = 0 evaluates to the squared gap plus the horizon") {
    LinearSystem sys = random_system(10, 7, 4, 3.0, 22);
    RngState rng(23);
    const Vector x0 = gaussian_vector(7, rng);
    const Vector x_star = gaussian_vector(7, rng);
    const ReferenceFrame frame = make_frame(sys, x0, x_star);
    const auto curve = mse_bound_curve(sys, frame, {0});
    const Vector gap = project_row_space(sys.svd(), x0 - x_star);
    CHECK(curve.values[0] ==
          doctest::Approx(dot(gap, gap) + curve.horizon).epsilon(1e-10));
  }
}

TEST_CASE("mean bound curve and the horizon relation") {
  LinearSystem sys = random_system(12, 8, 5, 2.5, 24);
  RngState rng(25);
  const ReferenceFrame frame =
      make_frame(sys, gaussian_vector(8, rng), gaussian_vector(8, rng));
  const auto cps = default_checkpoints(200);
  const auto mse = mse_bound_curve(sys, frame, cps);
  const auto mean = mean_bound_curve(sys, frame, cps);

  CHECK(mse.horizon ==
        doctest::Approx(mean.horizon * mean.horizon).epsilon(1e-12));

  // k = 0: gap + horizon.
  const Vector gap_vec = project_row_space(
      sys.svd(), frame.x0 - frame.x_star);
  CHECK(mean.values[0] ==
        doctest::Approx(norm(gap_vec) + mean.horizon).epsilon(1e-10));
}

TEST_CASE("bound crossover follows the stated sufficient condition") {
  // When ||x0^r - x_*^r|| <= 2 * horizon, sqrt(mse bound) <= mean bound
  // at every k; verified by direct evaluation of both formulas.
  std::size_t tested = 0;
  for (std::uint64_t t = 0; t < 40; ++t) {
    LinearSystem sys = random_system(10, 6, 3, 2.0 + 3.0 * (t % 5), 300 + t);
    RngState rng(400 + t);
    const ReferenceFrame frame =
        make_frame(sys, gaussian_vector(6, rng), gaussian_vector(6, rng));
    const auto cps = default_checkpoints(300);
    const auto mse = mse_bound_curve(sys, frame, cps);
    const auto mean = mean_bound_curve(sys, frame, cps);

    const Vector gap_vec =
        project_row_space(sys.svd(), frame.x0 - frame.x_star);
    if (norm(gap_vec) <= 2.0 * mean.horizon) {
      ++tested;
      for (std::size_t c = 0; c < cps.size(); ++c) {
        CHECK(std::sqrt(mse.values[c]) <= mean.values[c] + 1e-12);
      }
    }
    // At k = 0 the square root bound never exceeds the mean bound.
    CHECK(std::sqrt(mse.values[0]) <= mean.values[0] + 1e-12);
  }
  CHECK(tested > 0);
}

TEST_CASE("underlying-pair bound") {
  SUBCASE("the noisy pair itself, consistent, reduces to the frame bound") {
    LinearSystem sys = random_system(10, 6, 3, 0.0, 26);
    RngState rng(27);
    const Vector x0 = gaussian_vector(6, rng);
    const auto cps = default_checkpoints(100);
    const auto curve =
        underlying_pair_bound(sys, sys.matrix(), sys.rhs(), x0, cps);
    CHECK(curve.horizon <= 1e-18);

    const Vector x_ls = min_norm_least_squares(sys.svd(), sys.rhs());
    const ReferenceFrame frame = make_frame(sys, x0, x_ls);
    const auto direct = mse_bound_curve(sys, frame, cps);
    for (std::size_t c = 0; c < cps.size(); ++c) {
      CHECK(curve.values[c] ==
            doctest::Approx(direct.values[c]).epsilon(1e-8));
    }
  }

  SUBCASE("rhs-only noise recovers the epsilon-over-sigma horizon") {
    SyntheticSpec spec{12, 7, 4, 0.0, 28};
    DenseMatrix a = gen_low_rank_gaussian(spec);
    SvdFactors f = svd(a);
    const Vector b_true = gen_rhs_with_residual(a, f, 0.0, 29);
    RngState rng(30);
    const Vector eps = gaussian_vector(12, rng);
    const double sigma_min = f.sigma_min;
    LinearSystem sys(a, b_true + eps, std::move(f));

    const auto curve = underlying_pair_bound(sys, a, b_true,
                                             gaussian_vector(7, rng), {0, 1});
    CHECK(curve.horizon ==
          doctest::Approx(dot(eps, eps) / (sigma_min * sigma_min))
              .epsilon(1e-10));
  }

  SUBCASE("noise identity E x_LS - eps = A_noisy x_LS - b_noisy") {
    for (std::uint64_t t = 0; t < 10; ++t) {
      SyntheticSpec spec{9, 5, 3, 0.0, 500 + t};
      DenseMatrix a_true = gen_low_rank_gaussian(spec);
      RngState rng(600 + t);
      const Vector w = gaussian_vector(5, rng);
      const Vector b_true = multiply(a_true, w);

      DenseMatrix noise(9, 5);
      for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 5; ++j)
          noise(i, j) = 0.1 * rng.next_gaussian();
      DenseMatrix a_noisy(9, 5);
      for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 5; ++j)
          a_noisy(i, j) = a_true(i, j) + noise(i, j);
      const Vector eps = gaussian_vector(9, rng);
      const Vector b_noisy = b_true + eps;

      const Vector x_ls = min_norm_least_squares(svd(a_true), b_true);
      const Vector lhs = multiply(noise, x_ls) - eps;
      const Vector rhs = multiply(a_noisy, x_ls) - b_noisy;
      CHECK(norm(lhs - rhs) <= 1e-9 * (1.0 + norm(rhs)));
    }
  }

  SUBCASE("inconsistent underlying pairs are rejected") {
    LinearSystem sys = random_system(10, 6, 3, 2.0, 31);
    // The noisy system itself is inconsistent (beta > 0), so passing it as
    // the "underlying" pair must fail the consistency precondition.
    CHECK_THROWS_AS(underlying_pair_bound(sys, sys.matrix(), sys.rhs(),
                                          Vector(6), {0, 1}),
                    InconsistentUnderlying);
  }
}

TEST_CASE("expected singular coefficient closed form") {
  LinearSystem sys = random_system(14, 9, 5, 3.0, 32);
  const SvdFactors& f = sys.svd();
  RngState rng(33);
  const Vector x0 = gaussian_vector(9, rng);
  const Vector x_star = gaussian_vector(9, rng);
  const ReferenceFrame frame = make_frame(sys, x0, x_star);

  SUBCASE("k = 0 is the starting coefficient") {
    const Vector gap = project_row_space(f, x0 - x_star);
    for (std::size_t j = 1; j <= f.rank; ++j) {
      double expected = 0.0;
      for (std::size_t i = 0; i < 9; ++i) expected += gap[i] * f.v(i, j - 1);
      CHECK(expected_singular_coefficient(sys, frame, j, 0) ==
            doctest::Approx(expected).epsilon(1e-10));
    }
  }

  SUBCASE("the large-k limit is the scaled residual coefficient") {
    for (std::size_t j = 1; j <= f.rank; ++j) {
      double res_coeff = 0.0;
      for (std::size_t i = 0; i < 14; ++i) {
        res_coeff += frame.residual[i] * f.u(i, j - 1);
      }
      const double limit = -res_coeff / f.sigma[j - 1];
      CHECK(expected_singular_coefficient(sys, frame, j, 1'000'000) ==
            doctest::Approx(limit).epsilon(1e-10));
    }
  }

  SUBCASE("indices outside the rank are rejected") {
    CHECK_THROWS_AS(expected_singular_coefficient(sys, frame, 0, 1),
                    IndexOutOfRank);
    CHECK_THROWS_AS(expected_singular_coefficient(sys, frame, f.rank + 1, 1),
                    IndexOutOfRank);
  }
}

TEST_CASE("consistent case reduces to the pure-decay formula") {
  LinearSystem sys = random_system(12, 8, 5, 0.0, 34);
  const SvdFactors& f = sys.svd();
  RngState rng(35);
  const Vector x0 = project_row_space(f, gaussian_vector(8, rng));
  const Vector x_ls = min_norm_least_squares(f, sys.rhs());
  const ReferenceFrame frame = make_frame(sys, x0, x_ls);

  for (std::size_t j : {std::size_t{1}, f.rank}) {
    double start = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
      start += (x0[i] - x_ls[i]) * f.v(i, j - 1);
    }
    const double rate = 1.0 - f.sigma[j - 1] * f.sigma[j - 1] / f.frob_sq;
    for (std::size_t k : {std::size_t{0}, std::size_t{3}, std::size_t{50}}) {
      const double pure = std::pow(rate, static_cast<double>(k)) * start;
      CHECK(expected_singular_coefficient(sys, frame, j, k) ==
            doctest::Approx(pure).epsilon(1e-8));
    }
  }
}

TEST_CASE("exact mean iterate recursion") {
  LinearSystem sys = random_system(11, 7, 4, 2.0, 36);
  const SvdFactors& f = sys.svd();
  RngState rng(37);
  const Vector x0 = gaussian_vector(7, rng);
  const Vector x_star = gaussian_vector(7, rng);
  const ReferenceFrame frame = make_frame(sys, x0, x_star);

  SUBCASE("k = 0 returns the start point") {
    const Vector m0 = exact_mean_iterate(sys, frame, 0);
    for (std::size_t i = 0; i < 7; ++i) CHECK(m0[i] == x0[i]);
  }

  SUBCASE("recursion matches the closed form for every j and k") {
    for (std::size_t k : {std::size_t{1}, std::size_t{7}, std::size_t{40}}) {
      const Vector mk = exact_mean_iterate(sys, frame, k);
      for (std::size_t j = 1; j <= f.rank; ++j) {
        double proj = 0.0;
        for (std::size_t i = 0; i < 7; ++i) {
          proj += (mk[i] - frame.center[i]) * f.v(i, j - 1);
        }
        CHECK(proj == doctest::Approx(
                          expected_singular_coefficient(sys, frame, j, k))
                          .epsilon(1e-10));
      }
    }
  }

  SUBCASE("snapshots agree with one-shot evaluations") {
    const std::vector<std::size_t> cps = {0, 2, 5, 11};
    const auto snaps = exact_mean_iterates(sys, frame, cps);
    REQUIRE(snaps.size() == cps.size());
    for (std::size_t c = 0; c < cps.size(); ++c) {
      CHECK(norm(snaps[c] - exact_mean_iterate(sys, frame, cps[c])) <= 1e-13);
    }
  }
}

TEST_CASE("exact mean converges geometrically on consistent full-rank systems") {
  LinearSystem sys = random_system(10, 5, 5, 0.0, 38);
  const SvdFactors& f = sys.svd();
  RngState rng(39);
  const Vector x0 = gaussian_vector(5, rng);
  const Vector x_ls = min_norm_least_squares(f, sys.rhs());
  const ReferenceFrame frame = make_frame(sys, x0, x_ls);

  const double rate = 1.0 - f.sigma_min * f.sigma_min / f.frob_sq;
  const double start_gap = norm(x0 - x_ls);
  for (std::size_t k : {std::size_t{50}, std::size_t{200}}) {
    const double dist = norm(exact_mean_iterate(sys, frame, k) - x_ls);
    CHECK(dist <= std::pow(rate, static_cast<double>(k)) * start_gap + 1e-12);
  }
}

TEST_CASE("balls for references") {
  SUBCASE("least squares reference gives the residual-over-sigma radius") {
    LinearSystem sys = random_system(10, 6, 3, 4.0, 40);
    const SvdFactors& f = sys.svd();
    RngState rng(41);
    const Vector x0 = gaussian_vector(6, rng);
    const Vector x_ls = min_norm_least_squares(f, sys.rhs());
    const ReferenceFrame frame = make_frame(sys, x0, x_ls);
    const BallEstimate ball = ball_for_reference(sys, frame);
    const double expected =
        norm(multiply(sys.matrix(), x_ls) - sys.rhs()) / f.sigma_min;
    CHECK(ball.radius == doctest::Approx(expected).epsilon(1e-12));

    // Shifting the reference along the null space leaves the radius alone.
    const Vector y = project_null_space(f, gaussian_vector(6, rng));
    const ReferenceFrame shifted = make_frame(sys, x0, x_ls + y);
    CHECK(ball_for_reference(sys, shifted).radius ==
          doctest::Approx(ball.radius).epsilon(1e-10));
  }

  SUBCASE("consistent systems have radius zero") {
    LinearSystem sys = random_system(10, 6, 3, 0.0, 42);
    const Vector x_ls = min_norm_least_squares(sys.svd(), sys.rhs());
    RngState rng(43);
    const ReferenceFrame frame = make_frame(sys, gaussian_vector(6, rng), x_ls);
    CHECK(ball_for_reference(sys, frame).radius <= 1e-10);
  }
}

TEST_CASE("smallest ball") {
  SUBCASE("hand-computable rank-1 diagonal") {
    LinearSystem sys(from_rows({{1, 0}, {0, 0}}), Vector{1.0, 1.0});
    const BallEstimate ball = smallest_ball(sys, Vector{5.0, 7.0});
    CHECK(ball.center[0] == doctest::Approx(1.0));
    CHECK(ball.center[1] == doctest::Approx(7.0));
    CHECK(ball.radius == doctest::Approx(1.0));
  }

  SUBCASE("consistent systems shrink to a point") {
    LinearSystem sys = random_system(10, 6, 3, 0.0, 44);
    RngState rng(45);
    const BallEstimate ball = smallest_ball(sys, gaussian_vector(6, rng));
    CHECK(ball.radius <= 1e-10);
  }

  SUBCASE("no sampled reference point beats it") {
    LinearSystem sys = random_system(20, 8, 5, 3.0, 46);
    RngState rng(47);
    const Vector x0 = gaussian_vector(8, rng);
    const BallEstimate ball = smallest_ball(sys, x0);
    for (int t = 0; t < 100; ++t) {
      const ReferenceFrame frame =
          make_frame(sys, x0, gaussian_vector(8, rng));
      CHECK(ball_for_reference(sys, frame).radius >= ball.radius - 1e-12);
    }
  }
}

TEST_CASE("construct_minimizing_pair") {
  LinearSystem sys = random_system(12, 8, 5, 3.0, 48);
  const SvdFactors& f = sys.svd();
  const Vector x_ls = min_norm_least_squares(f, sys.rhs());
  const double target = norm(multiply(sys.matrix(), x_ls) - sys.rhs());

  SUBCASE("the canonical minimizer is the matrix itself") {
    const ConsistentPair pair = construct_minimizing_pair(sys, Vector(8));
    for (std::size_t i = 0; i < 12; ++i) {
      for (std::size_t j = 0; j < 8; ++j) {
        CHECK(pair.a(i, j) == sys.matrix()(i, j));
      }
    }
    const Vector expected_b = multiply(sys.matrix(), x_ls);
    CHECK(norm(pair.b - expected_b) <= 1e-14);

    const Vector noise = multiply(sys.matrix() - pair.a, x_ls) -
                         (sys.rhs() - pair.b);
    CHECK(norm(noise) == doctest::Approx(target).epsilon(1e-12));
  }

  SUBCASE("random orthonormal U with unit singular values") {
    RngState rng(49);
    const DenseMatrix u = random_orthonormal(12, f.rank, rng);
    Vector ones(f.rank);
    for (std::size_t k = 0; k < f.rank; ++k) ones[k] = 1.0;
    MinimizingPairShape shape;
    shape.u = u;
    shape.sigma = ones;
    const ConsistentPair pair = construct_minimizing_pair(sys, Vector(8), shape);

    const Vector hat_ls = min_norm_least_squares(svd(pair.a), pair.b);
    CHECK(norm(hat_ls - x_ls) <= 1e-10 * (1.0 + norm(x_ls)));
    const Vector noise =
        multiply(sys.matrix() - pair.a, hat_ls) - (sys.rhs() - pair.b);
    CHECK(norm(noise) == doctest::Approx(target).epsilon(1e-10));
  }

  SUBCASE("null-space shifts move the least squares solution exactly") {
    RngState rng(50);
    const Vector y = project_null_space(f, gaussian_vector(8, rng));
    REQUIRE(norm(y) > 0.1);  // rank 5 < 8 leaves room
    const ConsistentPair pair = construct_minimizing_pair(sys, y);
    const Vector hat_ls = min_norm_least_squares(svd(pair.a), pair.b);
    CHECK(norm(hat_ls - (x_ls + y)) <= 1e-10 * (1.0 + norm(x_ls + y)));

    const Vector noise =
        multiply(sys.matrix() - pair.a, hat_ls) - (sys.rhs() - pair.b);
    CHECK(norm(noise) == doctest::Approx(target).epsilon(1e-10));
  }

  SUBCASE("vectors outside the null space are rejected") {
    RngState rng(51);
    const Vector bad = gaussian_vector(8, rng);
    CHECK_THROWS_AS(construct_minimizing_pair(sys, bad), NullSpaceViolation);
  }

  SUBCASE("full row rank with a null shift still works") {
    // 5 x 8 full row rank: null space is 3-dimensional but U cannot grow.
    LinearSystem wide = random_system(5, 8, 5, 0.0, 52);
    const SvdFactors& wf = wide.svd();
    RngState rng(53);
    const Vector y = project_null_space(wf, gaussian_vector(8, rng));
    REQUIRE(norm(y) > 0.1);
    const Vector wide_ls = min_norm_least_squares(wf, wide.rhs());

    const ConsistentPair pair = construct_minimizing_pair(wide, y);
    const Vector hat_ls = min_norm_least_squares(svd(pair.a), pair.b);
    CHECK(norm(hat_ls - (wide_ls + y)) <= 1e-9 * (1.0 + norm(wide_ls + y)));
  }
}

TEST_CASE("every bound quantity is invariant under joint scaling") {
  LinearSystem sys = random_system(12, 8, 5, 2.0, 54);
  RngState rng(55);
  const Vector x0 = gaussian_vector(8, rng);
  const Vector x_star = gaussian_vector(8, rng);

  const double c = 3.7;
  DenseMatrix scaled_a(12, 8);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 8; ++j) scaled_a(i, j) = c * sys.matrix()(i, j);
  LinearSystem scaled(std::move(scaled_a), c * sys.rhs());

  const ReferenceFrame frame = make_frame(sys, x0, x_star);
  const ReferenceFrame scaled_frame = make_frame(scaled, x0, x_star);

  const auto cps = default_checkpoints(500);
  const auto mse = mse_bound_curve(sys, frame, cps);
  const auto scaled_mse = mse_bound_curve(scaled, scaled_frame, cps);
  const auto mean = mean_bound_curve(sys, frame, cps);
  const auto scaled_mean = mean_bound_curve(scaled, scaled_frame, cps);

  CHECK(scaled_mse.horizon == doctest::Approx(mse.horizon).epsilon(1e-12));
  CHECK(scaled_mean.horizon == doctest::Approx(mean.horizon).epsilon(1e-12));
  for (std::size_t i = 0; i < cps.size(); ++i) {
    CHECK(scaled_mse.values[i] ==
          doctest::Approx(mse.values[i]).epsilon(1e-12));
    CHECK(scaled_mean.values[i] ==
          doctest::Approx(mean.values[i]).epsilon(1e-12));
  }
  CHECK(smallest_ball(scaled, x0).radius ==
        doctest::Approx(smallest_ball(sys, x0).radius).epsilon(1e-12));
  CHECK(ball_for_reference(scaled, scaled_frame).radius ==
        doctest::Approx(ball_for_reference(sys, frame).radius)
            .epsilon(1e-12));
}
