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

}  // namespace

TEST_CASE("rk_step projects onto the chosen hyperplane") {
  // Row (1, 0) with rhs 2 from the origin lands on x1 = 2.
  LinearSystem sys(from_rows({{1, 0}, {0, 1}}), Vector{2.0, 0.0});
  const Vector x = rk_step(sys, Vector{0.0, 0.0}, 0);
  CHECK(x[0] == doctest::Approx(2.0));
  CHECK(x[1] == doctest::Approx(0.0));
}

TEST_CASE("rk_step collapses a parallel iterate to the target") {
  LinearSystem sys(from_rows({{3, 4}}), Vector{0.0});
  const Vector x = rk_step(sys, Vector{3.0, 4.0}, 0);
  CHECK(norm(x) <= 1e-12);
}

TEST_CASE("rk_step is the identity on the hyperplane") {
  LinearSystem sys(from_rows({{1, 1}}), Vector{1.0});
  const Vector x = rk_step(sys, Vector{1.0, 0.0}, 0);
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(0.0));
}

TEST_CASE("rk_step rejects zero rows and bad dimensions") {
  LinearSystem sys(from_rows({{1, 0}, {0, 0}}), Vector{1.0, 1.0});
  CHECK_THROWS_AS(rk_step(sys, Vector{0.0, 0.0}, 1), ZeroRow);
  CHECK_THROWS_AS(rk_step(sys, Vector{0.0}, 0), DimensionMismatch);
  CHECK_THROWS_AS(rk_step(sys, Vector{0.0, 0.0}, 7), DimensionMismatch);
}

TEST_CASE("rk_step annihilates the selected row residual") {
  LinearSystem sys = random_system(12, 7, 4, 2.0, 70);
  RngState rng(71);
  Vector x = gaussian_vector(7, rng);
  for (int t = 0; t < 20; ++t) {
    const std::size_t i = sample_row(sys.distribution(), rng);
    x = rk_step(sys, x, i);
    auto row = sys.matrix().row(i);
    double res = -sys.rhs()[i];
    for (std::size_t j = 0; j < x.dim(); ++j) res += row[j] * x[j];
    const double scale = std::abs(sys.rhs()[i]) +
                         std::sqrt(sys.row_sq_norms()[i]) * norm(x);
    CHECK(std::abs(res) <= 1e-12 * (1.0 + scale));
  }
}

TEST_CASE("run_rk solves a consistent orthogonal system") {
  LinearSystem sys(DenseMatrix::identity(2), Vector{1.0, 1.0});
  RkRunConfig cfg;
  cfg.seed = 0;
  cfg.max_iters = 200;
  cfg.checkpoints = default_checkpoints(200);
  cfg.x0 = Vector(2);
  const IterateTrace trace = run_rk(sys, cfg);
  const Vector& last = trace.iterates.back();
  CHECK(norm(last - Vector{1.0, 1.0}) <= 1e-6);
}

TEST_CASE("zero iterations trace only the start point") {
  LinearSystem sys(DenseMatrix::identity(2), Vector{1.0, 1.0});
  RkRunConfig cfg;
  cfg.max_iters = 0;
  cfg.checkpoints = {0};
  cfg.x0 = Vector{5.0, 6.0};
  const IterateTrace trace = run_rk(sys, cfg);
  REQUIRE(trace.iterates.size() == 1);
  CHECK(trace.iterates[0][0] == 5.0);
  CHECK(trace.iterates[0][1] == 6.0);
}

TEST_CASE("homogeneous iterates stay in the row space") {
  SyntheticSpec spec{10, 6, 3, 0.0, 80};
  DenseMatrix a = gen_low_rank_gaussian(spec);
  LinearSystem sys(std::move(a), Vector(10));
  const SvdFactors& f = sys.svd();

  RngState rng(81);
  RkRunConfig cfg;
  cfg.seed = 82;
  cfg.max_iters = 500;
  cfg.checkpoints = default_checkpoints(500);
  cfg.x0 = project_row_space(f, gaussian_vector(6, rng));
  const IterateTrace trace = run_rk(sys, cfg);
  for (const Vector& x : trace.iterates) {
    CHECK(norm(project_null_space(f, x)) <= 1e-10);
  }
}

TEST_CASE("the null component never moves") {
  LinearSystem sys = random_system(14, 9, 5, 3.0, 90);
  const SvdFactors& f = sys.svd();
  RngState rng(91);
  RkRunConfig cfg;
  cfg.seed = 92;
  cfg.max_iters = 2000;
  cfg.checkpoints = default_checkpoints(2000);
  cfg.x0 = gaussian_vector(9, rng);
  const Vector x0_null = project_null_space(f, cfg.x0);
  const IterateTrace trace = run_rk(sys, cfg);
  for (const Vector& x : trace.iterates) {
    CHECK(norm(project_null_space(f, x) - x0_null) <=
          1e-10 * (1.0 + norm(cfg.x0)));
  }
}

TEST_CASE("identical configs give bit-identical traces") {
  LinearSystem sys = random_system(10, 5, 3, 1.0, 100);
  RkRunConfig cfg;
  cfg.seed = 101;
  cfg.max_iters = 300;
  cfg.checkpoints = default_checkpoints(300);
  cfg.x0 = Vector(5);
  const IterateTrace t1 = run_rk(sys, cfg);
  const IterateTrace t2 = run_rk(sys, cfg);
  REQUIRE(t1.iterates.size() == t2.iterates.size());
  for (std::size_t c = 0; c < t1.iterates.size(); ++c) {
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(t1.iterates[c][j] == t2.iterates[c][j]);
    }
  }
}

TEST_CASE("selected rows are logged only on request") {
  LinearSystem sys = random_system(10, 5, 3, 1.0, 110);
  RkRunConfig cfg;
  cfg.seed = 111;
  cfg.max_iters = 50;
  cfg.checkpoints = {0, 50};
  cfg.x0 = Vector(5);
  CHECK(run_rk(sys, cfg).selected_rows.empty());
  cfg.log_selected_rows = true;
  CHECK(run_rk(sys, cfg).selected_rows.size() == 50);
}

TEST_CASE("default checkpoints are dense early and geometric late") {
  const auto cps = default_checkpoints(100'000);
  CHECK(cps.front() == 0);
  CHECK(cps.back() == 100'000);
  for (std::size_t i = 1; i < cps.size(); ++i) {
    CHECK(cps[i] > cps[i - 1]);
    if (cps[i] <= 100) CHECK(cps[i] == cps[i - 1] + 1);
  }
  CHECK(default_checkpoints(0) == std::vector<std::size_t>{0});
}

TEST_CASE("run_rk validates its checkpoint schedule") {
  LinearSystem sys(DenseMatrix::identity(2), Vector{1.0, 1.0});
  RkRunConfig cfg;
  cfg.max_iters = 10;
  cfg.x0 = Vector(2);
  cfg.checkpoints = {0, 5};  // missing max_iters
  CHECK_THROWS_AS(run_rk(sys, cfg), std::invalid_argument);
  cfg.checkpoints = {0, 5, 5, 10};
  CHECK_THROWS_AS(run_rk(sys, cfg), std::invalid_argument);
}

namespace {

IterateTrace fixed_trace(std::vector<std::size_t> cps,
                         std::vector<Vector> iterates) {
  IterateTrace t;
  t.checkpoints = std::move(cps);
  t.iterates = std::move(iterates);
  return t;
}

}  // namespace

TEST_CASE("empirical expectations on hand-made traces") {
  LinearSystem sys(DenseMatrix::identity(2), Vector{0.0, 0.0});
  const ReferenceFrame frame =
      make_frame(sys, Vector{0.0, 0.0}, Vector{0.0, 0.0});
  // center is the origin.

  SUBCASE("a single run has rms equal to mean error") {
    const std::vector<IterateTrace> traces = {
        fixed_trace({0, 1}, {Vector{3.0, 4.0}, Vector{1.0, 0.0}})};
    const EmpiricalErrors e = empirical_expectations(traces, frame);
    CHECK(e.rms_error[0] == doctest::Approx(5.0));
    CHECK(e.mean_error[0] == doctest::Approx(5.0));
    CHECK(e.rms_error[1] == doctest::Approx(1.0));
    CHECK(e.mean_error[1] == doctest::Approx(1.0));
  }

  SUBCASE("identical runs collapse to the same errors") {
    const std::vector<IterateTrace> traces = {
        fixed_trace({0}, {Vector{3.0, 4.0}}),
        fixed_trace({0}, {Vector{3.0, 4.0}})};
    const EmpiricalErrors e = empirical_expectations(traces, frame);
    CHECK(e.rms_error[0] == doctest::Approx(5.0));
    CHECK(e.mean_error[0] == doctest::Approx(5.0));
    CHECK(e.rms_sq_stderr[0] == doctest::Approx(0.0));
  }

  SUBCASE("symmetric runs cancel in the mean") {
    const std::vector<IterateTrace> traces = {
        fixed_trace({0}, {Vector{2.0, 0.0}}),
        fixed_trace({0}, {Vector{-2.0, 0.0}})};
    const EmpiricalErrors e = empirical_expectations(traces, frame);
    CHECK(e.rms_error[0] == doctest::Approx(2.0));
    CHECK(e.mean_error[0] == doctest::Approx(0.0));
  }

  SUBCASE("empty and mismatched trace sets are rejected") {
    CHECK_THROWS_AS(empirical_expectations({}, frame), EmptyTraceSet);
    const std::vector<IterateTrace> traces = {
        fixed_trace({0}, {Vector{1.0, 0.0}}),
        fixed_trace({0, 1}, {Vector{1.0, 0.0}, Vector{1.0, 0.0}})};
    CHECK_THROWS_AS(empirical_expectations(traces, frame),
                    MismatchedCheckpoints);
  }
}

TEST_CASE("jensen ordering holds for monte carlo aggregates") {
  LinearSystem sys = random_system(12, 8, 5, 4.0, 120);
  RngState rng(121);
  const Vector x0 = gaussian_vector(8, rng);
  const Vector x_star = gaussian_vector(8, rng);
  const ReferenceFrame frame = make_frame(sys, x0, x_star);

  const auto cps = default_checkpoints(500);
  std::vector<IterateTrace> traces;
  for (std::uint64_t i = 0; i < 15; ++i) {
    RkRunConfig cfg;
    cfg.seed = 200 + i;
    cfg.max_iters = 500;
    cfg.checkpoints = cps;
    cfg.x0 = x0;
    traces.push_back(run_rk(sys, cfg));
  }
  const EmpiricalErrors e = empirical_expectations(traces, frame);
  for (std::size_t c = 0; c < cps.size(); ++c) {
    CHECK(e.mean_error[c] <= e.rms_error[c] + 1e-12);
  }
}
