#include <limits>

#include "pool_internal.hpp"

namespace poolex::detail {

namespace {

/// Greedy heavy-edge matching: nodes in ascending index order take the
/// unmatched neighbor with the largest edge weight (lowest index on ties);
/// nodes left without a partner become singletons.
std::vector<int> heavy_edge_matching(const Graph& h, std::size_t* num_clusters) {
  const int n = static_cast<int>(h.num_nodes());
  std::vector<int> cluster(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    if (cluster[static_cast<std::size_t>(v)] >= 0) continue;
    const auto nbrs = h.neighbors(v);
    const auto wts = h.neighbor_weights(v);
    int best = -1;
    double best_w = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const int u = nbrs[i];
      if (u == v || cluster[static_cast<std::size_t>(u)] >= 0) continue;
      if (wts[i] > best_w) {
        best_w = wts[i];
        best = u;
      }
    }
    cluster[static_cast<std::size_t>(v)] = next;
    if (best >= 0) cluster[static_cast<std::size_t>(best)] = next;
    ++next;
  }
  *num_clusters = static_cast<std::size_t>(next);
  return cluster;
}

}  // namespace

PooledGraph pool_graclus(const Graph& g, const EmbeddingMatrix& x, const PoolConfig& cfg, bool on_complement) {
  auto level = [](const Graph& cur, const EmbeddingMatrix& cur_x, std::size_t) {
    std::size_t k = 0;
    const auto cluster = heavy_edge_matching(cur, &k);
    auto s = AssignmentMatrix::from_clusters(cluster, k);
    EmbeddingMatrix out(s.transpose_times(cur_x.values), cur_x.mode);
    Graph pooled = make_pooled_graph(k, contract_edges(cur, cluster), out);
    return LevelResult{PoolLevel{std::move(s), cur_x, out, {}}, std::move(pooled)};
  };
  if (!on_complement) return run_halving(OperatorId::Graclus, g, x, cfg, level);

  // SEL coarsens the complement at every level; CON contracts the original A
  // with the composite clusters.
  PooledGraph res = run_halving(OperatorId::CmpGraclus, complement(g), x, cfg, level);
  std::vector<int> cluster(g.num_nodes(), -1);
  const auto rows = res.assignment.to_sparse();
  for (std::size_t i = 0; i < rows.size(); ++i) cluster[i] = rows[i].front().supernode;
  res.graph = make_pooled_graph(res.num_supernodes(), contract_edges(g, cluster), res.features);
  return res;
}

}  // namespace poolex::detail
