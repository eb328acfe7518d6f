#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "saddle/common.hpp"

namespace saddle {

/// Row-major dense matrix.
struct DenseMatrix {
  Index rows = 0;
  Index cols = 0;
  std::vector<double> entries;

  DenseMatrix() = default;
  DenseMatrix(Index rows, Index cols);
  /// Throws LengthError if `entries.size() != rows * cols` and
  /// std::invalid_argument on non-finite entries.
  DenseMatrix(Index rows, Index cols, std::vector<double> entries);

  static DenseMatrix identity(Index n);
  static DenseMatrix diagonal(std::span<const double> diag);

  double operator()(Index i, Index j) const { return entries[static_cast<std::size_t>(i * cols + j)]; }
  double& operator()(Index i, Index j) { return entries[static_cast<std::size_t>(i * cols + j)]; }
};

struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Compressed sparse row storage. Column indices are strictly increasing
/// within a row and every stored value is finite and nonzero.
struct SparseMatrix {
  Index rows = 0;
  Index cols = 0;
  std::vector<Index> row_offsets{0};
  std::vector<Index> col_indices;
  std::vector<double> values;

  /// Builds CSR from unordered triplets. Duplicates are summed and entries
  /// that sum to exactly zero are dropped.
  static SparseMatrix from_triplets(Index rows, Index cols, std::vector<Triplet> triplets);

  /// Throws std::invalid_argument describing the first broken invariant.
  void validate() const;

  Index nonzeros() const { return static_cast<Index>(values.size()); }
};

DenseMatrix to_dense(const SparseMatrix& m);
SparseMatrix to_sparse(const DenseMatrix& m);

/// Immutable coupling operator K : R^cols -> R^rows with adjoint K^T.
/// Copies share the backing storage.
class LinearOperator {
 public:
  explicit LinearOperator(DenseMatrix m);
  explicit LinearOperator(SparseMatrix m);

  Index rows() const;
  Index cols() const;

  void apply(const Vector& x, Vector& out) const;
  void adjoint_apply(const Vector& y, Vector& out) const;
  Vector apply(const Vector& x) const;
  Vector adjoint_apply(const Vector& y) const;

  bool is_sparse() const;
  const DenseMatrix* dense() const;
  const SparseMatrix* sparse() const;

  /// Explicit `scale * K^T` with the same storage kind.
  LinearOperator transposed(double scale = 1.0) const;

  /// Dense copy of the entries regardless of backing.
  DenseMatrix to_dense() const;

  /// Operator norm by power iteration, computed once per backing and cached.
  double norm() const;
  std::optional<double> cached_norm() const;

 private:
  struct Shared;
  std::shared_ptr<Shared> shared_;
};

inline Vector apply(const LinearOperator& op, const Vector& x) { return op.apply(x); }
inline Vector adjoint_apply(const LinearOperator& op, const Vector& y) { return op.adjoint_apply(y); }

inline constexpr double kNormTolerance = 1e-10;
inline constexpr int kNormMaxIter = 10'000;

/// Largest singular value by power iteration on K^T K from a fixed seeded
/// start vector. Stops once the relative change of the eigenvalue estimate is
/// at most `tol`; throws NormEstimateError (carrying the last estimate) when
/// `max_iter` is exhausted first. Returns 0 for the zero operator.
double operator_norm(const LinearOperator& op, double tol = kNormTolerance,
                     int max_iter = kNormMaxIter);

double frobenius_norm(const LinearOperator& op);

/// min(||K||_F, sqrt(||K||_1 ||K||_inf)); an upper bound on ||K|| that costs
/// one pass over the entries.
double norm_upper_bound(const LinearOperator& op);

}  // namespace saddle
