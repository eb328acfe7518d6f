#include "saddle/linop.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "saddle/random.hpp"

namespace saddle {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstDenseMap = Eigen::Map<const RowMajor>;

ConstDenseMap as_map(const DenseMatrix& m) { return {m.entries.data(), m.rows, m.cols}; }

void check_dims(Index rows, Index cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be nonnegative");
}

}  // namespace

DenseMatrix::DenseMatrix(Index rows_, Index cols_)
    : rows(rows_), cols(cols_), entries(static_cast<std::size_t>(rows_ * cols_), 0.0) {
  check_dims(rows_, cols_);
}

DenseMatrix::DenseMatrix(Index rows_, Index cols_, std::vector<double> entries_)
    : rows(rows_), cols(cols_), entries(std::move(entries_)) {
  check_dims(rows_, cols_);
  require_length(static_cast<Index>(entries.size()), rows * cols, "dense entries");
  for (double v : entries) {
    if (!std::isfinite(v)) throw std::invalid_argument("dense matrix entry is not finite");
  }
}

DenseMatrix DenseMatrix::identity(Index n) {
  DenseMatrix m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
  const auto n = static_cast<Index>(diag.size());
  DenseMatrix m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  return m;
}

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols, std::vector<Triplet> triplets) {
  check_dims(rows, cols);
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw std::out_of_range("triplet (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                              ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (!std::isfinite(t.value)) throw std::invalid_argument("sparse value is not finite");
  }
  // stable so that duplicate summation order follows input order
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_offsets.assign(static_cast<std::size_t>(rows + 1), 0);
  std::size_t k = 0;
  while (k < triplets.size()) {
    const Index r = triplets[k].row;
    const Index c = triplets[k].col;
    double sum = 0.0;
    for (; k < triplets.size() && triplets[k].row == r && triplets[k].col == c; ++k) {
      sum += triplets[k].value;
    }
    if (sum != 0.0) {
      m.col_indices.push_back(c);
      m.values.push_back(sum);
      ++m.row_offsets[static_cast<std::size_t>(r + 1)];
    }
  }
  for (Index r = 0; r < rows; ++r) {
    m.row_offsets[static_cast<std::size_t>(r + 1)] += m.row_offsets[static_cast<std::size_t>(r)];
  }
  return m;
}

void SparseMatrix::validate() const {
  if (row_offsets.size() != static_cast<std::size_t>(rows + 1) || row_offsets.front() != 0) {
    throw std::invalid_argument("row_offsets must have rows+1 entries starting at 0");
  }
  if (row_offsets.back() != static_cast<Index>(values.size()) ||
      col_indices.size() != values.size()) {
    throw std::invalid_argument("row_offsets[rows] must equal the number of stored values");
  }
  for (Index r = 0; r < rows; ++r) {
    const Index begin = row_offsets[static_cast<std::size_t>(r)];
    const Index end = row_offsets[static_cast<std::size_t>(r + 1)];
    if (end < begin) throw std::invalid_argument("row_offsets must be nondecreasing");
    for (Index k = begin; k < end; ++k) {
      const Index c = col_indices[static_cast<std::size_t>(k)];
      if (c < 0 || c >= cols) throw std::invalid_argument("column index out of range");
      if (k > begin && c <= col_indices[static_cast<std::size_t>(k - 1)]) {
        throw std::invalid_argument("column indices must be strictly increasing within a row");
      }
      const double v = values[static_cast<std::size_t>(k)];
      if (!std::isfinite(v) || v == 0.0) {
        throw std::invalid_argument("stored values must be finite and nonzero");
      }
    }
  }
}

DenseMatrix to_dense(const SparseMatrix& m) {
  DenseMatrix d(m.rows, m.cols);
  for (Index r = 0; r < m.rows; ++r) {
    for (Index k = m.row_offsets[static_cast<std::size_t>(r)];
         k < m.row_offsets[static_cast<std::size_t>(r + 1)]; ++k) {
      d(r, m.col_indices[static_cast<std::size_t>(k)]) = m.values[static_cast<std::size_t>(k)];
    }
  }
  return d;
}

SparseMatrix to_sparse(const DenseMatrix& m) {
  std::vector<Triplet> triplets;
  for (Index r = 0; r < m.rows; ++r) {
    for (Index c = 0; c < m.cols; ++c) {
      if (m(r, c) != 0.0) triplets.push_back({r, c, m(r, c)});
    }
  }
  return SparseMatrix::from_triplets(m.rows, m.cols, std::move(triplets));
}

struct LinearOperator::Shared {
  std::variant<DenseMatrix, SparseMatrix> backing;
  mutable std::once_flag norm_once;
  mutable std::optional<double> norm;
};

LinearOperator::LinearOperator(DenseMatrix m) : shared_(std::make_shared<Shared>()) {
  shared_->backing = std::move(m);
}

LinearOperator::LinearOperator(SparseMatrix m) : shared_(std::make_shared<Shared>()) {
  m.validate();
  shared_->backing = std::move(m);
}

Index LinearOperator::rows() const {
  return std::visit([](const auto& m) { return m.rows; }, shared_->backing);
}

Index LinearOperator::cols() const {
  return std::visit([](const auto& m) { return m.cols; }, shared_->backing);
}

bool LinearOperator::is_sparse() const {
  return std::holds_alternative<SparseMatrix>(shared_->backing);
}

const DenseMatrix* LinearOperator::dense() const { return std::get_if<DenseMatrix>(&shared_->backing); }

const SparseMatrix* LinearOperator::sparse() const {
  return std::get_if<SparseMatrix>(&shared_->backing);
}

void LinearOperator::apply(const Vector& x, Vector& out) const {
  require_length(x.size(), cols(), "apply");
  if (const auto* d = dense()) {
    out.noalias() = as_map(*d) * x;
    return;
  }
  const SparseMatrix& s = *sparse();
  out.resize(s.rows);
  for (Index r = 0; r < s.rows; ++r) {
    double acc = 0.0;
    for (Index k = s.row_offsets[static_cast<std::size_t>(r)];
         k < s.row_offsets[static_cast<std::size_t>(r + 1)]; ++k) {
      acc += s.values[static_cast<std::size_t>(k)] * x[s.col_indices[static_cast<std::size_t>(k)]];
    }
    out[r] = acc;
  }
}

void LinearOperator::adjoint_apply(const Vector& y, Vector& out) const {
  require_length(y.size(), rows(), "adjoint_apply");
  if (const auto* d = dense()) {
    out.noalias() = as_map(*d).transpose() * y;
    return;
  }
  // transposed traversal of the CSR rows (scatter into the output)
  const SparseMatrix& s = *sparse();
  out.setZero(s.cols);
  for (Index r = 0; r < s.rows; ++r) {
    const double yr = y[r];
    for (Index k = s.row_offsets[static_cast<std::size_t>(r)];
         k < s.row_offsets[static_cast<std::size_t>(r + 1)]; ++k) {
      out[s.col_indices[static_cast<std::size_t>(k)]] += s.values[static_cast<std::size_t>(k)] * yr;
    }
  }
}

Vector LinearOperator::apply(const Vector& x) const {
  Vector out;
  apply(x, out);
  return out;
}

Vector LinearOperator::adjoint_apply(const Vector& y) const {
  Vector out;
  adjoint_apply(y, out);
  return out;
}

LinearOperator LinearOperator::transposed(double scale) const {
  if (const auto* d = dense()) {
    DenseMatrix t(d->cols, d->rows);
    for (Index r = 0; r < d->rows; ++r) {
      for (Index c = 0; c < d->cols; ++c) t(c, r) = scale * (*d)(r, c);
    }
    return LinearOperator(std::move(t));
  }
  const SparseMatrix& s = *sparse();
  std::vector<Triplet> triplets;
  triplets.reserve(s.values.size());
  for (Index r = 0; r < s.rows; ++r) {
    for (Index k = s.row_offsets[static_cast<std::size_t>(r)];
         k < s.row_offsets[static_cast<std::size_t>(r + 1)]; ++k) {
      triplets.push_back({s.col_indices[static_cast<std::size_t>(k)], r,
                          scale * s.values[static_cast<std::size_t>(k)]});
    }
  }
  return LinearOperator(SparseMatrix::from_triplets(s.cols, s.rows, std::move(triplets)));
}

DenseMatrix LinearOperator::to_dense() const {
  if (const auto* d = dense()) return *d;
  return saddle::to_dense(*sparse());
}

double LinearOperator::norm() const {
  std::call_once(shared_->norm_once, [this] { shared_->norm = operator_norm(*this); });
  return *shared_->norm;
}

std::optional<double> LinearOperator::cached_norm() const { return shared_->norm; }

double operator_norm(const LinearOperator& op, double tol, int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("operator_norm: tol must be positive");
  if (op.rows() == 0 || op.cols() == 0) return 0.0;

  Rng rng(0x6e6f726dULL);
  Vector v(op.cols());
  for (Index i = 0; i < v.size(); ++i) v[i] = rng.normal();
  v.normalize();

  Vector kv;
  Vector ktkv;
  double estimate = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    op.apply(v, kv);
    const double next = kv.squaredNorm();  // Rayleigh quotient of K^T K at unit v
    if (next == 0.0) return 0.0;
    op.adjoint_apply(kv, ktkv);
    const double change = std::abs(next - estimate) / next;
    estimate = next;
    if (it > 0 && change <= tol) return std::sqrt(estimate);
    v = ktkv / ktkv.norm();
  }
  throw NormEstimateError(std::sqrt(estimate), "operator_norm: power iteration did not converge in " +
                                                   std::to_string(max_iter) + " iterations");
}

double frobenius_norm(const LinearOperator& op) {
  if (const auto* d = op.dense()) return as_map(*d).norm();
  double sum = 0.0;
  for (double v : op.sparse()->values) sum += v * v;
  return std::sqrt(sum);
}

double norm_upper_bound(const LinearOperator& op) {
  const DenseMatrix* d = op.dense();
  const SparseMatrix* s = op.sparse();
  std::vector<double> row_sums(static_cast<std::size_t>(op.rows()), 0.0);
  std::vector<double> col_sums(static_cast<std::size_t>(op.cols()), 0.0);
  if (d != nullptr) {
    for (Index r = 0; r < d->rows; ++r) {
      for (Index c = 0; c < d->cols; ++c) {
        row_sums[static_cast<std::size_t>(r)] += std::abs((*d)(r, c));
        col_sums[static_cast<std::size_t>(c)] += std::abs((*d)(r, c));
      }
    }
  } else {
    for (Index r = 0; r < s->rows; ++r) {
      for (Index k = s->row_offsets[static_cast<std::size_t>(r)];
           k < s->row_offsets[static_cast<std::size_t>(r + 1)]; ++k) {
        const double a = std::abs(s->values[static_cast<std::size_t>(k)]);
        row_sums[static_cast<std::size_t>(r)] += a;
        col_sums[static_cast<std::size_t>(s->col_indices[static_cast<std::size_t>(k)])] += a;
      }
    }
  }
  const double max_row = row_sums.empty() ? 0.0 : *std::max_element(row_sums.begin(), row_sums.end());
  const double max_col = col_sums.empty() ? 0.0 : *std::max_element(col_sums.begin(), col_sums.end());
  return std::min(frobenius_norm(op), std::sqrt(max_row * max_col));
}

}  // namespace saddle
