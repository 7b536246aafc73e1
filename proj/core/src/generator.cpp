#include "poolex/generator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "poolex/error.hpp"
#include "poolex/isomorphism.hpp"
#include "poolex/wl.hpp"

namespace poolex {

namespace {

using EdgeSet = std::set<Edge>;

Edge ordered(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

bool connected(std::size_t n, const EdgeSet& edges) {
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = true;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == n;
}

std::size_t max_edges(std::size_t n) { return n * (n - 1) / 2; }

EdgeSet random_edge_set(std::size_t n, Rng& rng) {
  EdgeSet edges;
  // Random spanning tree: attach each node of a shuffled order to an earlier one.
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  rng.shuffle(order.begin(), order.end());
  for (std::size_t i = 1; i < n; ++i) {
    edges.insert(ordered(order[i], order[rng.below(i)]));
  }
  if (n < 2) return edges;
  const std::size_t cap = std::min<std::size_t>(
      static_cast<std::size_t>(std::ceil(2.4 * static_cast<double>(n))), max_edges(n));
  const std::size_t m = n - 1 + rng.below(cap - (n - 1) + 1);
  while (edges.size() < m) {
    const int a = static_cast<int>(rng.below(n));
    const int b = static_cast<int>(rng.below(n));
    if (a != b) edges.insert(ordered(a, b));
  }
  return edges;
}

Graph to_graph(std::size_t n, const EdgeSet& edges) {
  return Graph::with_unit_features(n, std::vector<Edge>(edges.begin(), edges.end()));
}

Edge pick(const EdgeSet& edges, Rng& rng) {
  auto it = edges.begin();
  std::advance(it, static_cast<std::ptrdiff_t>(rng.below(edges.size())));
  return *it;
}

std::optional<EdgeSet> move_one_edge(std::size_t n, EdgeSet edges, Rng& rng) {
  if (edges.empty() || edges.size() >= max_edges(n)) return std::nullopt;
  const Edge removed = pick(edges, rng);
  edges.erase(removed);
  for (;;) {
    const int a = static_cast<int>(rng.below(n));
    const int b = static_cast<int>(rng.below(n));
    if (a == b) continue;
    const Edge added = ordered(a, b);
    if (added == removed || edges.contains(added)) continue;
    edges.insert(added);
    return edges;
  }
}

std::optional<EdgeSet> double_edge_swap(EdgeSet edges, Rng& rng) {
  if (edges.size() < 2) return std::nullopt;
  Edge e1 = pick(edges, rng);
  Edge e2 = pick(edges, rng);
  if (rng.below(2) == 1) std::swap(e2.u, e2.v);
  const int a = e1.u, b = e1.v, c = e2.u, d = e2.v;
  if (a == c || a == d || b == c || b == d) return std::nullopt;
  const Edge f1 = ordered(a, d);
  const Edge f2 = ordered(c, b);
  if (edges.contains(f1) || edges.contains(f2)) return std::nullopt;
  edges.erase(e1);
  edges.erase(ordered(c, d));
  edges.insert(f1);
  edges.insert(f2);
  return edges;
}

std::optional<GraphPair> try_pair(std::size_t n, std::size_t difficulty, Rng& rng) {
  const EdgeSet base = random_edge_set(n, rng);
  const auto twin = difficulty <= 1 ? move_one_edge(n, base, rng) : double_edge_swap(base, rng);
  if (!twin || !connected(n, *twin)) return std::nullopt;

  GraphPair pair{to_graph(n, base), to_graph(n, *twin), 0, 1, true};
  const auto round = wl_divergence_round(pair.left, pair.right, WlInit::Uniform);
  if (!round || *round < difficulty) return std::nullopt;
  if (!wl_distinguishable(pair.left, pair.right)) return std::nullopt;
  if (n <= kBruteForceNodeLimit && brute_force_isomorphic(pair.left, pair.right)) return std::nullopt;
  return pair;
}

}  // namespace

Graph random_connected_graph(std::size_t n, Rng& rng) {
  if (n == 0) throw GenerationError("random_connected_graph: n must be >= 1");
  return to_graph(n, random_edge_set(n, rng));
}

std::vector<GraphPair> generate_wl_pairs(std::size_t count, NodeRange nodes, std::uint64_t seed,
                                         std::size_t difficulty, const GeneratorOptions& options) {
  if (count == 0) throw GenerationError("generate_wl_pairs: count must be >= 1");
  if (nodes.lower == 0 || nodes.lower > nodes.upper) {
    throw GenerationError("generate_wl_pairs: invalid node range [" + std::to_string(nodes.lower) + ", " +
                          std::to_string(nodes.upper) + "]");
  }
  std::vector<GraphPair> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, i));
    const std::size_t n = nodes.lower + rng.below(nodes.upper - nodes.lower + 1);
    std::optional<GraphPair> pair;
    for (std::size_t attempt = 0; attempt < options.max_attempts && !pair; ++attempt) {
      pair = try_pair(n, difficulty, rng);
    }
    if (!pair) {
      throw GenerationError("generate_wl_pairs: search space exhausted for pair " + std::to_string(i) + " (n = " +
                            std::to_string(n) + ", difficulty = " + std::to_string(difficulty) + ") after " +
                            std::to_string(options.max_attempts) + " attempts");
    }
    pairs.push_back(std::move(*pair));
  }
  return pairs;
}

}  // namespace poolex
