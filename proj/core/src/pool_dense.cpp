#include <cmath>

#include "poolex/error.hpp"
#include "poolex/rng.hpp"
#include "pool_internal.hpp"

namespace poolex::detail {

namespace {

constexpr std::size_t kDenseHiddenWidth = 16;

Matrix row_softmax(const Matrix& logits) {
  Matrix s(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double m = logits.row(i).maxCoeff();
    s.row(i) = (logits.row(i).array() - m).exp();
    s.row(i) /= s.row(i).sum();
  }
  return s;
}

}  // namespace

PooledGraph pool_dense(const Graph& g, const EmbeddingMatrix& x, const PoolConfig& cfg, bool random) {
  const std::size_t n = g.num_nodes();
  const std::size_t k = cfg.k ? *cfg.k : target_supernodes(*cfg.ratio, n);
  if (k > n) {
    throw PoolError("dense pooling: K = " + std::to_string(k) + " exceeds N = " + std::to_string(n));
  }
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(k);

  Matrix s;
  if (random) {
    Rng rng(derive_seed(cfg.seed, kStreamRandDense));
    s.resize(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) s(i, j) = 1.0 - rng.uniform();  // (0, 1]
      s.row(i) /= s.row(i).sum();
    }
  } else {
    MlpSpec spec{{x.cols(), kDenseHiddenWidth, k}, Activation::Elu, derive_seed(cfg.seed, kStreamDense), 1.0};
    s = row_softmax(Mlp(spec).forward(x.values));
  }

  auto assignment = AssignmentMatrix::dense(s, 1.0);
  EmbeddingMatrix pooled_x(assignment.transpose_times(x.values), FeatureMode::Real);

  // CON keeps S^T A S as weighted edges, dropping the diagonal.
  const Matrix a = g.adjacency_matrix();
  const Matrix ap = s.transpose() * a * s;
  std::vector<Edge> edges;
  std::vector<double> weights;
  for (Eigen::Index i = 0; i < cols; ++i) {
    for (Eigen::Index j = i + 1; j < cols; ++j) {
      if (ap(i, j) != 0.0) {
        edges.push_back({static_cast<int>(i), static_cast<int>(j)});
        weights.push_back(ap(i, j));
      }
    }
  }
  Graph pooled = make_pooled_graph(k, std::move(edges), pooled_x, std::move(weights));
  PoolLevel level{assignment, x, pooled_x, {}};
  const OperatorId op = random ? OperatorId::RandDense : OperatorId::Dense;
  return PooledGraph{std::move(pooled), pooled_x, std::move(assignment), op,
                     {std::move(level)}, {}, static_cast<double>(k) / static_cast<double>(n)};
}

}  // namespace poolex::detail
