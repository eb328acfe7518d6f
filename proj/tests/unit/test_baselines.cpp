#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "saddle/problems.hpp"
#include "saddle/solvers.hpp"

using namespace saddle;

namespace {

SaddleProblem bilinear(double k) {
  return SaddleProblem{Zero{}, Zero{}, LinearOperator(DenseMatrix(1, 1, {k})), 0.0, Objective{}, "bilinear"};
}

SaddleProblem small_lasso() {
  ProblemSpec s = default_spec(Family::LassoWay1);
  s.rows = 20;
  s.cols = 50;
  s.sparsity = 4;
  return gen_lasso(s).first;
}

}  // namespace

TEST_CASE("fixed-step PDA on the bilinear toy") {
  const auto& f = fixtures::get("pda_bilinear_5");
  BaselineConfig b;
  b.tau = f.in[2];
  b.sigma = f.in[3];
  const SaddleProblem p = bilinear(1.0);
  SolverState s = init_baseline_state(p, Vector{{f.in[0]}}, Vector{{f.in[1]}}, b.tau);
  for (int k = 1; k <= 5; ++k) {
    pda_iterate(s, p, b);
    CHECK(std::abs(s.x_cur[0] - f.out[2 * k]) <= f.tol);
    CHECK(std::abs(s.y_cur[0] - f.out[2 * k + 1]) <= f.tol);
  }
}

TEST_CASE("PDA step product gate") {
  BaselineConfig b;
  b.tau = 0.5;
  b.sigma = 0.5;
  CHECK_NOTHROW(validate_pda(b, 2.0));
  b.sigma = 0.6;
  CHECK_THROWS_AS(validate_pda(b, 2.0), ConfigError);
  b.tau = 0.0;
  CHECK_THROWS_AS(validate_pda(b, 1.0), ConfigError);
}

TEST_CASE("PDA-L accepts the first trial when the condition holds") {
  const auto& f = fixtures::get("pdal_condition");
  REQUIRE(f.out[0] == 1.0);
  BaselineConfig b;
  b.beta = f.in[0];
  b.alpha_ls = f.in[4];
  // trial step tau sqrt(1 + theta) = 1 with theta = 1; |K| = 0.5 gives the ratio
  const SaddleProblem p = bilinear(f.in[2] / f.in[3]);
  SolverState s = init_baseline_state(p, Vector{{1.0}}, Vector{{1.0}}, f.in[1] / std::sqrt(2.0));
  s.theta = 1.0;
  pdal_iterate(s, p, b);
  CHECK(s.last_shrinks == 0);
  CHECK(s.lam_cur == doctest::Approx(f.in[1]).epsilon(1e-15));
}

TEST_CASE("PDA-L shrinks until the condition holds") {
  const SaddleProblem p = small_lasso();
  BaselineConfig b;
  b.beta = 1.0 / 400.0;
  SolverState s = init_baseline_state(p, Vector::Zero(50), -p.objective.b, 10.0);
  for (int k = 0; k < 300; ++k) {
    pdal_iterate(s, p, b);
    const double lhs = std::sqrt(b.beta) * s.lam_cur * (s.Ky_cur - s.Ky_prev).norm();
    CHECK(lhs <= b.alpha_ls * (s.y_cur - s.y_prev).norm() + 1e-12);
  }
  CHECK(s.correction_backtracks > 0);
}

TEST_CASE("FISTA momentum") {
  const auto& f = fixtures::get("fista_t2");
  CHECK(fista_momentum(f.in[0]) == doctest::Approx(f.out[0]).epsilon(f.tol));
}

TEST_CASE("proximal gradient descends on LASSO") {
  const SaddleProblem p = small_lasso();
  BaselineConfig b;
  const double L = p.K.norm();
  b.step = 1.0 / (L * L);
  SolverState s = init_baseline_state(p, Vector::Zero(50), -p.objective.b, b.step);
  double prev = primal_objective(p, s.x_cur);
  for (int k = 0; k < 500; ++k) {
    pgm_iterate(s, p, b);
    const double phi = primal_objective(p, s.x_cur);
    CHECK(phi <= prev + 1e-12 * std::abs(prev));
    prev = phi;
  }
}

TEST_CASE("FISTA backtracking enforces the quadratic bound") {
  const SaddleProblem p = small_lasso();
  BaselineConfig b;
  b.fista_lambda0 = 1.0;
  SolverState s = init_baseline_state(p, Vector::Zero(50), -p.objective.b, b.fista_lambda0);
  for (int k = 0; k < 200; ++k) {
    const Vector v = s.z_cur;
    fista_iterate(s, p, b);
    const Vector d = s.x_cur - v;
    CHECK(s.lam_cur * p.K.apply(d).squaredNorm() <= d.squaredNorm() * (1.0 + 1e-12));
  }
  CHECK(s.correction_backtracks > 0);
  CHECK(s.lam_cur >= b.fista_beta / (p.K.norm() * p.K.norm()));
}

TEST_CASE("least-squares baselines reject other problems") {
  const SaddleProblem game = make_matrix_game(LinearOperator(DenseMatrix::identity(2)));
  BaselineConfig b;
  b.step = 0.1;
  SolverState s = init_baseline_state(game, Vector{{0.5, 0.5}}, Vector{{0.5, 0.5}}, 0.1);
  CHECK_THROWS_AS(pgm_iterate(s, game, b), UnsupportedMetric);
  CHECK_THROWS_AS(fista_iterate(s, game, b), UnsupportedMetric);
}
