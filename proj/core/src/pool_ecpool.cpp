#include <algorithm>
#include <cmath>
#include <numeric>

#include "poolex/rng.hpp"
#include "pool_internal.hpp"

namespace poolex::detail {

namespace {

struct EdgeScorer {
  std::vector<double> w;  // 2F: first half applies to x_i, second half to x_j
  double b = 0.0;

  // f is symmetrized over the two edge directions so r_ij = r_ji.
  double operator()(const Matrix& x, int i, int j) const {
    const auto f = static_cast<Eigen::Index>(x.cols());
    double forward = 0.0;
    double backward = 0.0;
    for (Eigen::Index c = 0; c < f; ++c) {
      const double wi = w[static_cast<std::size_t>(c)];
      const double wj = w[static_cast<std::size_t>(c + f)];
      forward += wi * x(i, c) + wj * x(j, c);
      backward += wi * x(j, c) + wj * x(i, c);
    }
    const double logit = 0.5 * (forward + backward) + b;
    return 1.0 / (1.0 + std::exp(-logit));
  }
};

}  // namespace

PooledGraph pool_ecpool(const Graph& g, const EmbeddingMatrix& x, const PoolConfig& cfg) {
  EdgeScorer scorer;
  Rng rng(derive_seed(cfg.seed, kStreamEcpool));
  scorer.w.resize(2 * x.cols());
  for (auto& v : scorer.w) v = rng.uniform(-1.0, 1.0);
  scorer.b = rng.uniform(-1.0, 1.0);

  return run_halving(OperatorId::Ecpool, g, x, cfg,
                     [&scorer](const Graph& cur, const EmbeddingMatrix& cur_x, std::size_t) {
    const auto& edges = cur.edges();
    std::vector<double> score(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) score[e] = scorer(cur_x.values, edges[e].u, edges[e].v);
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });

    const std::size_t n = cur.num_nodes();
    std::vector<int> cluster(n, -1);
    std::vector<double> r;
    for (std::size_t e : order) {
      const auto [u, v] = edges[e];
      if (u == v || cluster[static_cast<std::size_t>(u)] >= 0 || cluster[static_cast<std::size_t>(v)] >= 0) continue;
      const int id = static_cast<int>(r.size());
      cluster[static_cast<std::size_t>(u)] = id;
      cluster[static_cast<std::size_t>(v)] = id;
      r.push_back(score[e]);
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (cluster[v] < 0) {
        cluster[v] = static_cast<int>(r.size());
        r.push_back(1.0);
      }
    }

    const std::size_t k = r.size();
    auto s = AssignmentMatrix::from_clusters(cluster, k);
    Matrix reduced = s.transpose_times(cur_x.values);
    for (std::size_t c = 0; c < k; ++c) reduced.row(static_cast<Eigen::Index>(c)) *= r[c];
    EmbeddingMatrix out(std::move(reduced), FeatureMode::Real);
    Graph pooled = make_pooled_graph(k, contract_edges(cur, cluster), out);
    return LevelResult{PoolLevel{std::move(s), cur_x, out, std::move(r)}, std::move(pooled)};
  });
}

}  // namespace poolex::detail
