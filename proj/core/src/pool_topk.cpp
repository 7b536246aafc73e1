#include <algorithm>
#include <cmath>
#include <numeric>

#include "poolex/error.hpp"
#include "poolex/rng.hpp"
#include "pool_internal.hpp"

namespace poolex::detail {

PooledGraph pool_topk(OperatorId op, const Graph& g, const EmbeddingMatrix& x, const PoolConfig& cfg) {
  const std::size_t n = g.num_nodes();
  const std::size_t k = cfg.k ? *cfg.k : target_supernodes(*cfg.ratio, n);
  if (k > n) throw PoolError(to_string(op) + ": K = " + std::to_string(k) + " exceeds N = " + std::to_string(n));

  std::vector<double> score;
  switch (op) {
    case OperatorId::Topk:
      score = project_scores(x.values, projector_for(cfg, x.cols(), kStreamTopk));
      break;
    case OperatorId::Sagpool: {
      // Score from one GIN aggregation followed by a linear projection.
      const auto agg = gin_forward(g, x, GinLayer{});
      score = project_scores(agg.values, projector_for(cfg, x.cols(), kStreamSagpool));
      break;
    }
    case OperatorId::RandSparse: {
      Rng rng(derive_seed(cfg.seed, kStreamRandSparse));
      score.resize(n);
      for (auto& s : score) s = rng.normal();
      break;
    }
    default:
      throw PoolError("pool_topk: not a selection operator");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)];
  });
  order.resize(k);  // kept nodes, supernode j = order[j]

  std::vector<int> cluster(n, -1);
  Matrix gated(static_cast<Eigen::Index>(k), x.values.cols());
  for (std::size_t j = 0; j < k; ++j) {
    const int v = order[j];
    cluster[static_cast<std::size_t>(v)] = static_cast<int>(j);
    gated.row(static_cast<Eigen::Index>(j)) = std::tanh(score[static_cast<std::size_t>(v)]) * x.values.row(v);
  }
  auto s = AssignmentMatrix::from_clusters(cluster, k);
  EmbeddingMatrix out(std::move(gated), FeatureMode::Real);

  // CON: subgraph induced by the kept nodes.
  std::vector<Edge> edges;
  std::vector<double> weights;
  const auto& all = g.edges();
  for (std::size_t e = 0; e < all.size(); ++e) {
    const int a = cluster[static_cast<std::size_t>(all[e].u)];
    const int b = cluster[static_cast<std::size_t>(all[e].v)];
    if (a < 0 || b < 0 || a == b) continue;
    edges.push_back({std::min(a, b), std::max(a, b)});
    if (g.weighted()) weights.push_back(g.edge_weights()[e]);
  }
  Graph pooled = make_pooled_graph(k, std::move(edges), out, std::move(weights));
  PoolLevel level{s, x, out, {}};
  return PooledGraph{std::move(pooled), out, std::move(s), op, {std::move(level)}, std::move(score),
                     static_cast<double>(k) / static_cast<double>(n)};
}

}  // namespace poolex::detail
