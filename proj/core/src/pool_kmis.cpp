#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include "poolex/error.hpp"
#include "pool_internal.hpp"

namespace poolex::detail {

namespace {

/// Hop distances from `source`, cut off beyond `radius` (unreached = max).
std::vector<std::size_t> bounded_bfs(const Graph& g, int source, std::size_t radius) {
  std::vector<std::size_t> dist(g.num_nodes(), std::numeric_limits<std::size_t>::max());
  std::queue<int> frontier;
  dist[static_cast<std::size_t>(source)] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    const std::size_t d = dist[static_cast<std::size_t>(v)];
    if (d == radius) continue;
    for (int u : g.neighbors(v)) {
      if (dist[static_cast<std::size_t>(u)] > d + 1) {
        dist[static_cast<std::size_t>(u)] = d + 1;
        frontier.push(u);
      }
    }
  }
  return dist;
}

}  // namespace

PooledGraph pool_kmis(const Graph& g, const EmbeddingMatrix& x, const PoolConfig& cfg) {
  const std::size_t n = g.num_nodes();
  const std::size_t radius = *cfg.k;
  const auto p = projector_for(cfg, x.cols(), kStreamKmis);
  const auto rank_score = project_scores(x.values, p);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return rank_score[static_cast<std::size_t>(a)] > rank_score[static_cast<std::size_t>(b)];
  });

  // Greedy maximal independent set of g^k, highest score first.
  std::vector<bool> blocked(n, false);
  std::vector<int> centroids;
  for (int v : order) {
    if (blocked[static_cast<std::size_t>(v)]) continue;
    centroids.push_back(v);
    const auto dist = bounded_bfs(g, v, radius);
    for (std::size_t u = 0; u < n; ++u) {
      if (dist[u] <= radius) blocked[u] = true;
    }
  }

  // Each node joins the nearest centroid; centroids were found in descending
  // score order, so the first one at the minimum distance wins ties.
  std::vector<int> cluster(n, -1);
  std::vector<std::size_t> best(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const auto dist = bounded_bfs(g, centroids[c], radius);
    for (std::size_t u = 0; u < n; ++u) {
      if (dist[u] < best[u]) {
        best[u] = dist[u];
        cluster[u] = static_cast<int>(c);
      }
    }
  }
  if (std::find(cluster.begin(), cluster.end(), -1) != cluster.end()) {
    throw PoolError("kmis: a node is not within k hops of any centroid");
  }

  const std::size_t k = centroids.size();
  auto s = AssignmentMatrix::from_clusters(cluster, k);
  EmbeddingMatrix out(s.transpose_times(x.values), x.mode);
  Graph pooled = make_pooled_graph(k, contract_edges(g, cluster), out);
  PoolLevel level{s, x, out, {}};
  return PooledGraph{std::move(pooled), out, std::move(s), OperatorId::Kmis,
                     {std::move(level)}, rank_score, static_cast<double>(k) / static_cast<double>(n)};
}

}  // namespace poolex::detail
