#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "saddle/linop.hpp"
#include "saddle/random.hpp"

using namespace saddle;

namespace {

DenseMatrix random_dense(Index m, Index n, std::uint64_t seed) {
  Rng rng(seed);
  DenseMatrix d(m, n);
  for (double& v : d.entries) v = rng.normal();
  return d;
}

Vector random_vec(Index n, Rng& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

}  // namespace

TEST_CASE("dense apply matches the naive multiply") {
  const auto& f = fixtures::get("dense_apply_3x2");
  std::vector<double> a(f.in.begin(), f.in.begin() + 6);
  LinearOperator K(DenseMatrix(3, 2, a));
  const Vector y = K.apply(Vector{{f.in[6], f.in[7]}});
  for (Index i = 0; i < 3; ++i) CHECK(y[i] == doctest::Approx(f.out[i]).epsilon(f.tol));
}

TEST_CASE("adjoint of a 2x2 on a basis vector") {
  const auto& f = fixtures::get("adjoint_2x2");
  LinearOperator K(DenseMatrix(2, 2, {f.in[0], f.in[1], f.in[2], f.in[3]}));
  const Vector r = K.adjoint_apply(Vector{{f.in[4], f.in[5]}});
  CHECK(r[0] == f.out[0]);
  CHECK(r[1] == f.out[1]);
}

TEST_CASE("apply rejects wrong lengths") {
  LinearOperator K(DenseMatrix(3, 2));
  CHECK_THROWS_AS(K.apply(Vector::Zero(3)), LengthError);
  CHECK_THROWS_AS(K.adjoint_apply(Vector::Zero(2)), LengthError);
}

TEST_CASE("dense constructor validates entries") {
  CHECK_THROWS_AS(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), LengthError);
  CHECK_THROWS_AS(DenseMatrix(1, 1, {std::nan("")}), std::invalid_argument);
}

TEST_CASE("adjoint identity on dense and sparse backings") {
  Rng rng(5);
  const DenseMatrix d = random_dense(7, 11, 9);
  const LinearOperator dense(d);
  const LinearOperator sparse(to_sparse(d));
  for (int probe = 0; probe < 100; ++probe) {
    const Vector x = random_vec(11, rng);
    const Vector y = random_vec(7, rng);
    for (const LinearOperator* K : {&dense, &sparse}) {
      const double lhs = K->apply(x).dot(y);
      const double rhs = x.dot(K->adjoint_apply(y));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("sparse and dense backings agree") {
  Rng rng(6);
  const SparseMatrix s = SparseMatrix::from_triplets(4, 5, {{0, 1, 2.0}, {3, 4, -1.0}, {2, 0, 0.5}, {0, 1, 1.0}});
  const LinearOperator sp(s);
  const LinearOperator de(to_dense(s));
  const Vector x = random_vec(5, rng);
  CHECK((sp.apply(x) - de.apply(x)).norm() <= 1e-15);
  CHECK(to_dense(s)(0, 1) == 3.0);
}

TEST_CASE("from_triplets drops cancelling duplicates and validates indices") {
  const SparseMatrix s = SparseMatrix::from_triplets(2, 2, {{0, 0, 1.0}, {0, 0, -1.0}, {1, 1, 4.0}});
  CHECK(s.nonzeros() == 1);
  CHECK_NOTHROW(s.validate());
  CHECK_THROWS(SparseMatrix::from_triplets(2, 2, {{2, 0, 1.0}}));
}

TEST_CASE("transposed operator with scale") {
  const DenseMatrix d = random_dense(3, 4, 2);
  const LinearOperator K(d);
  const LinearOperator T = K.transposed(-2.0);
  CHECK(T.rows() == 4);
  CHECK(T.cols() == 3);
  const DenseMatrix td = T.to_dense();
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 4; ++j) CHECK(td(j, i) == -2.0 * d(i, j));
  const LinearOperator Ts = LinearOperator(to_sparse(d)).transposed(-1.0);
  CHECK(Ts.is_sparse());
  CHECK(Ts.to_dense()(1, 2) == -d(2, 1));
}

TEST_CASE("operator norm against the Gram oracle") {
  const auto& f = fixtures::get("gram_norm_5x4");
  const LinearOperator K(DenseMatrix(5, 4, f.in));
  CHECK(operator_norm(K) == doctest::Approx(f.out[0]).epsilon(f.tol));
}

TEST_CASE("operator norm properties") {
  CHECK(operator_norm(LinearOperator(DenseMatrix::identity(3))) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(operator_norm(LinearOperator(DenseMatrix(3, 3))) == 0.0);
  const double diag[] = {2.0, -5.0, 1.0};
  CHECK(operator_norm(LinearOperator(DenseMatrix::diagonal(diag))) == doctest::Approx(5.0).epsilon(1e-10));

  Rng rng(44);
  const LinearOperator K(random_dense(30, 20, 3));
  const double L = K.norm();
  for (int probe = 0; probe < 50; ++probe) {
    const Vector v = random_vec(20, rng);
    CHECK(K.apply(v).norm() <= L * v.norm() * (1.0 + 1e-8));
  }
  CHECK(L <= norm_upper_bound(K) * (1.0 + 1e-12));
  CHECK(K.cached_norm().has_value());
}

TEST_CASE("power iteration budget exhaustion reports the last estimate") {
  const LinearOperator K(random_dense(30, 20, 3));
  try {
    operator_norm(K, 1e-300, 3);
    FAIL("expected NormEstimateError");
  } catch (const NormEstimateError& e) {
    CHECK(e.last_estimate() > 0.0);
  }
}

TEST_CASE("Frobenius norm") {
  const auto& f = fixtures::get("frobenius_2x2");
  CHECK(frobenius_norm(LinearOperator(DenseMatrix(2, 2, f.in))) == doctest::Approx(f.out[0]).epsilon(f.tol));
  CHECK(frobenius_norm(LinearOperator(to_sparse(DenseMatrix(2, 2, f.in)))) ==
        doctest::Approx(std::sqrt(30.0)).epsilon(1e-15));
}
