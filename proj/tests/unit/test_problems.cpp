#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "saddle/diagnostics.hpp"
#include "saddle/problems.hpp"
#include "saddle/random.hpp"

using namespace saddle;

namespace {

ProblemSpec small_lasso_spec(Family f = Family::LassoWay1) {
  ProblemSpec s = default_spec(f);
  s.rows = 20;
  s.cols = 50;
  s.sparsity = 4;
  return s;
}

}  // namespace

TEST_CASE("family names round trip") {
  for (auto f : {Family::LassoWay1, Family::LassoWay2, Family::GameInstance1, Family::GameInstance2,
                 Family::GameInstance3, Family::GameInstance4, Family::NnlsWell, Family::NnlsIllc}) {
    CHECK(parse_family(family_name(f)) == f);
  }
  CHECK_FALSE(parse_family("lasso3").has_value());
}

TEST_CASE("default experiment sizes") {
  const ProblemSpec l1 = default_spec(Family::LassoWay1);
  CHECK(l1.rows == 200);
  CHECK(l1.cols == 1000);
  CHECK(l1.sparsity == 10);
  CHECK(l1.l1_weight == 0.1);
  const ProblemSpec l2 = default_spec(Family::LassoWay2);
  CHECK(l2.rows == 1000);
  CHECK(l2.cols == 2000);
  CHECK(l2.sparsity == 100);
  CHECK(default_spec(Family::GameInstance3).rows == 500);
  CHECK(default_spec(Family::GameInstance4).cols == 200);
  CHECK(default_spec(Family::GameInstance1).seed == 100);
}

TEST_CASE("spec validation") {
  ProblemSpec s = small_lasso_spec();
  s.sparsity = 51;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = small_lasso_spec();
  s.rows = 0;
  CHECK_THROWS_AS(gen_lasso(s), ConfigError);
  CHECK_THROWS_AS(gen_lasso(default_spec(Family::GameInstance1)), ConfigError);
}

TEST_CASE("LASSO generator is deterministic and exactly sparse") {
  for (auto f : {Family::LassoWay1, Family::LassoWay2}) {
    const auto [p1, t1] = gen_lasso(small_lasso_spec(f));
    const auto [p2, t2] = gen_lasso(small_lasso_spec(f));
    CHECK(p1.K.to_dense().entries == p2.K.to_dense().entries);
    CHECK(t1.b == t2.b);
    CHECK(t1.w == t2.w);
    Index nnz = 0;
    for (Index i = 0; i < t1.w.size(); ++i) nnz += t1.w[i] != 0.0;
    CHECK(nnz == 4);
    if (f == Family::LassoWay1) CHECK(t1.w.lpNorm<Eigen::Infinity>() <= 10.0);
    // noise level 0.1
    const double resid = (p1.K.apply(t1.w) - t1.b).norm() / std::sqrt(20.0);
    CHECK(resid < 0.3);
    CHECK(p1.primal_dim() == 50);
    CHECK(p1.dual_dim() == 20);
  }
  ProblemSpec other = small_lasso_spec();
  other.seed = 2;
  CHECK(gen_lasso(other).second.b != gen_lasso(small_lasso_spec()).second.b);
}

TEST_CASE("game generators") {
  for (auto f : {Family::GameInstance1, Family::GameInstance2, Family::GameInstance3, Family::GameInstance4}) {
    ProblemSpec s = default_spec(f);
    const SaddleProblem p = gen_matrix_game(s);
    CHECK(p.dual_dim() == s.rows);
    CHECK(p.primal_dim() == s.cols);
    CHECK(p.K.to_dense().entries == gen_matrix_game(s).K.to_dense().entries);
    const DenseMatrix d = p.K.to_dense();
    const auto [lo, hi] = std::minmax_element(d.entries.begin(), d.entries.end());
    if (f == Family::GameInstance1) CHECK((*lo >= -1.0 && *hi <= 1.0));
    if (f == Family::GameInstance4) CHECK((*lo >= 0.0 && *hi <= 1.0));
    if (f == Family::GameInstance3) CHECK(*hi > 10.0);  // sd 10 over 50,000 draws
  }
}

TEST_CASE("LASSO objective") {
  const auto& f = fixtures::get("lasso_objective_identity");
  const SaddleProblem p = make_lasso(LinearOperator(DenseMatrix(1, 1, {f.in[0]})), Vector{{f.in[1]}}, f.in[2]);
  CHECK(primal_objective(p, Vector{{f.in[3]}}) == doctest::Approx(f.out[0]).epsilon(f.tol));
}

TEST_CASE("NNLS objective is infinite outside the orthant") {
  const SaddleProblem p = make_nnls(LinearOperator(DenseMatrix::identity(2)), Vector{{1.0, 1.0}}, false);
  CHECK(primal_objective(p, Vector{{1.0, 0.0}}) == 0.5);
  CHECK(std::isinf(primal_objective(p, Vector{{-0.1, 0.0}})));
  CHECK_THROWS_AS(primal_objective(make_matrix_game(LinearOperator(DenseMatrix::identity(2))), Vector{{0.5, 0.5}}),
                  UnsupportedMetric);
}

TEST_CASE("matrix game gap") {
  const auto& fi = fixtures::get("pd_gap_identity");
  CHECK(pd_gap_game(LinearOperator(DenseMatrix::identity(2)), Vector{{0.5, 0.5}}, Vector{{0.5, 0.5}}) ==
        doctest::Approx(fi.out[0]).epsilon(fi.tol));
  const auto& f = fixtures::get("pd_gap_2x2");
  const LinearOperator K(DenseMatrix(2, 2, {1, 2, 3, 4}));
  CHECK(pd_gap_game(K, Vector{{1.0, 0.0}}, Vector{{1.0, 0.0}}) == doctest::Approx(f.out[0]).epsilon(f.tol));
  CHECK_THROWS_AS(pd_gap_game(K, Vector{{0.6, 0.6}}, Vector{{1.0, 0.0}}), FeasibilityError);
  CHECK_THROWS_AS(pd_gap_game(K, Vector{{1.0, 0.0}}, Vector{{1.5, -0.5}}), FeasibilityError);
}

TEST_CASE("game gap is nonnegative and matches brute force") {
  Rng rng(4);
  const SaddleProblem p = gen_matrix_game(default_spec(Family::GameInstance2));
  const DenseMatrix d = p.K.to_dense();
  for (int k = 0; k < 20; ++k) {
    Vector x(p.primal_dim()), y(p.dual_dim());
    for (Index i = 0; i < x.size(); ++i) x[i] = rng.normal();
    for (Index i = 0; i < y.size(); ++i) y[i] = rng.normal();
    x = proj_simplex(x);
    y = proj_simplex(y);
    const auto kx = oracle::naive_multiply(d, {x.data(), x.data() + x.size()});
    const auto kty = oracle::naive_adjoint_multiply(d, {y.data(), y.data() + y.size()});
    const double brute = *std::max_element(kx.begin(), kx.end()) - *std::min_element(kty.begin(), kty.end());
    const double gap = pd_gap_game(p.K, x, y);
    CHECK(gap >= 0.0);
    CHECK(gap == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("random sparse matrices") {
  const SparseMatrix s = random_sparse(30, 20, 0.05, 3);
  CHECK_NOTHROW(s.validate());
  const DenseMatrix d = to_dense(s);
  for (Index j = 0; j < 20; ++j) {
    bool any = false;
    for (Index i = 0; i < 30; ++i) any = any || d(i, j) != 0.0;
    CHECK(any);
  }
  CHECK(random_sparse(30, 20, 0.05, 3).values == s.values);
}

TEST_CASE("swapped NNLS has the transformed saddle point") {
  // NNLS with a unique interior solution: K = I, b = (1, 2), x_bar = b
  const LinearOperator K(DenseMatrix(3, 2, {1, 0, 0, 1, 1, 1}));
  const Vector b{{1.0, 2.0, 3.0}};
  const SaddleProblem plain = make_nnls(K, b, false);
  const SaddleProblem swapped = make_nnls(K, b, true);
  CHECK(swapped.gamma == 0.5);
  CHECK(swapped.primal_dim() == 3);
  CHECK(swapped.dual_dim() == 2);
  CHECK(swapped.objective.on_dual);
  // least squares solution of the full-rank system is (1, 2), feasible
  const Vector x_bar{{1.0, 2.0}};
  const Vector y_bar = K.apply(x_bar) - b;
  CHECK(saddle_residual(plain, x_bar, y_bar) <= 1e-14);
  CHECK(saddle_residual(swapped, y_bar, x_bar) <= 1e-14);
  CHECK(saddle_residual(swapped, y_bar, x_bar + Vector{{0.1, 0.0}}) > 1e-3);
}

TEST_CASE("NNLS loader needs a matrix file") {
  ProblemSpec s = default_spec(Family::NnlsWell);
  CHECK_THROWS_AS(load_nnls(s, false), ConfigError);
}
