#include "poolex/assignment.hpp"

#include <algorithm>
#include <cmath>

#include "poolex/error.hpp"

namespace poolex {

AssignmentMatrix::AssignmentMatrix(std::size_t rows, std::size_t cols,
                                   std::variant<Matrix, SparseRows> storage,
                                   std::optional<double> lambda_claim)
    : rows_(rows), cols_(cols), storage_(std::move(storage)), lambda_claim_(lambda_claim) {
  if (cols_ < 1) throw PoolError("assignment matrix needs K >= 1 columns");
  if (const auto* m = std::get_if<Matrix>(&storage_)) {
    if (!m->allFinite()) throw PoolError("assignment matrix has non-finite scores");
  } else {
    const auto& sp = std::get<SparseRows>(storage_);
    if (sp.size() != rows_) throw PoolError("sparse assignment row count mismatch");
    for (const auto& row : sp) {
      for (const auto& m : row) {
        if (m.supernode < 0 || static_cast<std::size_t>(m.supernode) >= cols_) {
          throw PoolError("supernode index " + std::to_string(m.supernode) + " outside [0, " +
                          std::to_string(cols_) + ")");
        }
        if (!std::isfinite(m.score)) throw PoolError("assignment matrix has non-finite scores");
      }
    }
  }
}

AssignmentMatrix AssignmentMatrix::dense(Matrix s, std::optional<double> lambda_claim) {
  const auto rows = static_cast<std::size_t>(s.rows());
  const auto cols = static_cast<std::size_t>(s.cols());
  return AssignmentMatrix(rows, cols, std::move(s), lambda_claim);
}

AssignmentMatrix AssignmentMatrix::sparse(std::size_t rows, std::size_t cols, SparseRows memberships,
                                          std::optional<double> lambda_claim) {
  for (auto& row : memberships) {
    std::sort(row.begin(), row.end(),
              [](const Membership& a, const Membership& b) { return a.supernode < b.supernode; });
  }
  return AssignmentMatrix(rows, cols, std::move(memberships), lambda_claim);
}

AssignmentMatrix AssignmentMatrix::from_clusters(std::span<const int> cluster_of, std::size_t k) {
  SparseRows rows(cluster_of.size());
  bool every_row = true;
  for (std::size_t i = 0; i < cluster_of.size(); ++i) {
    if (cluster_of[i] >= 0) {
      rows[i].push_back({cluster_of[i], 1.0});
    } else {
      every_row = false;
    }
  }
  return sparse(cluster_of.size(), k, std::move(rows),
                every_row ? std::optional<double>(1.0) : std::nullopt);
}

AssignmentMatrix AssignmentMatrix::identity(std::size_t n) {
  std::vector<int> clusters(n);
  for (std::size_t i = 0; i < n; ++i) clusters[i] = static_cast<int>(i);
  return from_clusters(clusters, n);
}

bool AssignmentMatrix::is_binary() const {
  if (const auto* m = std::get_if<Matrix>(&storage_)) {
    return ((m->array() == 0.0) || (m->array() == 1.0)).all();
  }
  for (const auto& row : std::get<SparseRows>(storage_)) {
    for (const auto& m : row) {
      if (m.score != 0.0 && m.score != 1.0) return false;
    }
  }
  return true;
}

Matrix AssignmentMatrix::to_dense() const {
  if (const auto* m = std::get_if<Matrix>(&storage_)) return *m;
  Matrix d = Matrix::Zero(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  const auto& sp = std::get<SparseRows>(storage_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (const auto& m : sp[i]) d(static_cast<Eigen::Index>(i), m.supernode) += m.score;
  }
  return d;
}

SparseRows AssignmentMatrix::to_sparse() const {
  if (const auto* sp = std::get_if<SparseRows>(&storage_)) return *sp;
  const auto& m = std::get<Matrix>(storage_);
  SparseRows rows(rows_);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) rows[static_cast<std::size_t>(i)].push_back({static_cast<int>(j), m(i, j)});
    }
  }
  return rows;
}

Vector AssignmentMatrix::row_sums() const {
  if (const auto* m = std::get_if<Matrix>(&storage_)) return m->rowwise().sum();
  Vector sums = Vector::Zero(static_cast<Eigen::Index>(rows_));
  const auto& sp = std::get<SparseRows>(storage_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (const auto& m : sp[i]) sums(static_cast<Eigen::Index>(i)) += m.score;
  }
  return sums;
}

Matrix AssignmentMatrix::transpose_times(const Matrix& x) const {
  if (static_cast<std::size_t>(x.rows()) != rows_) {
    throw PoolError("S^T X: S has " + std::to_string(rows_) + " rows, X has " +
                    std::to_string(x.rows()));
  }
  if (const auto* m = std::get_if<Matrix>(&storage_)) return m->transpose() * x;
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(cols_), x.cols());
  const auto& sp = std::get<SparseRows>(storage_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (const auto& m : sp[i]) out.row(m.supernode) += m.score * x.row(static_cast<Eigen::Index>(i));
  }
  return out;
}

AssignmentMatrix AssignmentMatrix::then(const AssignmentMatrix& next) const {
  if (next.rows_ != cols_) throw PoolError("cannot compose assignment matrices of mismatched shape");
  if (is_dense() || next.is_dense()) {
    return dense(to_dense() * next.to_dense());
  }
  const auto& a = std::get<SparseRows>(storage_);
  const auto& b = std::get<SparseRows>(next.storage_);
  SparseRows rows(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::vector<double> acc(next.cols_, 0.0);
    std::vector<bool> touched(next.cols_, false);
    for (const auto& m : a[i]) {
      for (const auto& n : b[static_cast<std::size_t>(m.supernode)]) {
        acc[static_cast<std::size_t>(n.supernode)] += m.score * n.score;
        touched[static_cast<std::size_t>(n.supernode)] = true;
      }
    }
    for (std::size_t j = 0; j < next.cols_; ++j) {
      if (touched[j]) rows[i].push_back({static_cast<int>(j), acc[j]});
    }
  }
  std::optional<double> claim;
  if (lambda_claim_ && next.lambda_claim_) claim = *lambda_claim_ * *next.lambda_claim_;
  return sparse(rows_, next.cols_, std::move(rows), claim);
}

AssignmentMatrix AssignmentMatrix::permute_columns(std::span<const int> perm) const {
  if (perm.size() != cols_) throw PoolError("column permutation has wrong size");
  if (const auto* m = std::get_if<Matrix>(&storage_)) {
    Matrix out(m->rows(), m->cols());
    for (std::size_t j = 0; j < cols_; ++j) out.col(static_cast<Eigen::Index>(j)) = m->col(perm[j]);
    return dense(std::move(out), lambda_claim_);
  }
  std::vector<int> inverse(cols_);
  for (std::size_t j = 0; j < cols_; ++j) inverse[static_cast<std::size_t>(perm[j])] = static_cast<int>(j);
  SparseRows rows = std::get<SparseRows>(storage_);
  for (auto& row : rows) {
    for (auto& m : row) m.supernode = inverse[static_cast<std::size_t>(m.supernode)];
  }
  return sparse(rows_, cols_, std::move(rows), lambda_claim_);
}

}  // namespace poolex
