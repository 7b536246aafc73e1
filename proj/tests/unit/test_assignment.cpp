#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "poolex/assignment.hpp"
#include "poolex/error.hpp"

namespace poolex {
namespace {

TEST(Assignment, FromClustersIsBinary) {
  const std::vector<int> cluster{0, 1, 0, -1};
  const auto s = AssignmentMatrix::from_clusters(cluster, 2);
  EXPECT_TRUE(s.is_binary());
  EXPECT_EQ(s.row_sums(), (Vector(4) << 1, 1, 1, 0).finished());
  EXPECT_FALSE(s.lambda_claim());
  const Matrix d = s.to_dense();
  EXPECT_EQ(d(2, 0), 1.0);
  EXPECT_EQ(d(3, 1), 0.0);
}

TEST(Assignment, DenseAndSparseAgree) {
  Rng rng(4);
  Matrix m = Matrix::Zero(5, 3);
  for (Eigen::Index i = 0; i < 5; ++i) m(i, static_cast<Eigen::Index>(rng.below(3))) = rng.uniform();
  const auto dense = AssignmentMatrix::dense(m);
  const auto sparse = AssignmentMatrix::sparse(5, 3, dense.to_sparse());
  EXPECT_EQ(sparse.to_dense(), m);
  const Matrix x = test::random_real_features(5, 2, rng);
  EXPECT_LE((dense.transpose_times(x) - sparse.transpose_times(x)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((dense.transpose_times(x) - m.transpose() * x).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Assignment, CompositionMatchesProduct) {
  Rng rng(6);
  const Matrix a = test::random_real_features(6, 4, rng).cwiseAbs();
  const Matrix b = test::random_real_features(4, 2, rng).cwiseAbs();
  const auto s = AssignmentMatrix::dense(a).then(AssignmentMatrix::dense(b));
  EXPECT_LE((s.to_dense() - a * b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Assignment, PermuteColumns) {
  const std::vector<int> cluster{0, 1, 2};
  const auto s = AssignmentMatrix::from_clusters(cluster, 3).permute_columns(std::vector<int>{2, 0, 1});
  EXPECT_EQ(s.to_dense()(2, 0), 1.0);
  EXPECT_EQ(s.to_dense()(0, 1), 1.0);
}

TEST(Assignment, RejectsInvalid) {
  EXPECT_THROW((void)AssignmentMatrix::dense(Matrix(2, 0)), Error);
  Matrix bad = Matrix::Ones(2, 2);
  bad(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW((void)AssignmentMatrix::dense(bad), Error);
  EXPECT_THROW((void)AssignmentMatrix::sparse(1, 2, SparseRows{{{2, 1.0}}}), Error);
  EXPECT_THROW((void)AssignmentMatrix::from_clusters(std::vector<int>{0, 3}, 2), Error);
}

TEST(Assignment, IdentityRows) {
  const auto s = AssignmentMatrix::identity(4);
  EXPECT_EQ(s.to_dense(), Matrix::Identity(4, 4));
  EXPECT_EQ(s.lambda_claim(), 1.0);
}

}  // namespace
}  // namespace poolex
