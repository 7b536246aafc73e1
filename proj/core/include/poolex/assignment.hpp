#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "poolex/matrix.hpp"

namespace poolex {

/// One nonzero membership score of a node.
struct Membership {
  int supernode = 0;
  double score = 0.0;

  friend bool operator==(const Membership&, const Membership&) = default;
};

using SparseRows = std::vector<std::vector<Membership>>;

/// Cluster assignment matrix S (N x K): entry (i, j) is the membership score
/// of node i in supernode j.
///
/// Stored either dense or as per-node membership lists; both views are
/// available from either storage. Invariants: K >= 1, finite scores, every
/// supernode index < K.
class AssignmentMatrix {
 public:
  static AssignmentMatrix dense(Matrix s, std::optional<double> lambda_claim = std::nullopt);
  static AssignmentMatrix sparse(std::size_t rows, std::size_t cols, SparseRows memberships,
                                 std::optional<double> lambda_claim = std::nullopt);
  /// Binary S with node i in supernode cluster_of[i]; -1 leaves the row empty.
  static AssignmentMatrix from_clusters(std::span<const int> cluster_of, std::size_t k);
  static AssignmentMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_dense() const noexcept { return std::holds_alternative<Matrix>(storage_); }
  const std::optional<double>& lambda_claim() const noexcept { return lambda_claim_; }

  /// Every entry is exactly 0 or 1.
  bool is_binary() const;

  Matrix to_dense() const;
  SparseRows to_sparse() const;

  Vector row_sums() const;

  /// S^T X.
  Matrix transpose_times(const Matrix& x) const;

  /// Composition this * next (N x K1 times K1 x K2); used for recursive pooling.
  AssignmentMatrix then(const AssignmentMatrix& next) const;

  /// Column j of the result is column perm[j] of this matrix.
  AssignmentMatrix permute_columns(std::span<const int> perm) const;

 private:
  AssignmentMatrix(std::size_t rows, std::size_t cols, std::variant<Matrix, SparseRows> storage,
                   std::optional<double> lambda_claim);

  std::size_t rows_;
  std::size_t cols_;
  std::variant<Matrix, SparseRows> storage_;
  std::optional<double> lambda_claim_;
};

}  // namespace poolex
