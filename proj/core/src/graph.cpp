#include "poolex/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "poolex/error.hpp"

namespace poolex {

std::string to_string(FeatureMode mode) {
  return mode == FeatureMode::Integer ? "int" : "real";
}

FeatureMode parse_feature_mode(const std::string& text) {
  if (text == "int") return FeatureMode::Integer;
  if (text == "real") return FeatureMode::Real;
  throw Error("unknown feature mode '" + text + "' (expected \"int\" or \"real\")");
}

namespace {

void validate_features(const Matrix& x, std::size_t n, FeatureMode mode) {
  if (static_cast<std::size_t>(x.rows()) != n) {
    throw GraphError("node_features has " + std::to_string(x.rows()) +
                     " rows, expected num_nodes = " + std::to_string(n));
  }
  if (x.cols() < 1) throw GraphError("node_features must have at least one column");
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const double v = x(i, j);
      if (!std::isfinite(v)) {
        throw GraphError("node_features[" + std::to_string(i) + "][" + std::to_string(j) +
                         "] is not finite");
      }
      if (mode == FeatureMode::Integer && (v < 0.0 || std::floor(v) != v)) {
        throw GraphError("node_features[" + std::to_string(i) + "][" + std::to_string(j) +
                         "] = " + std::to_string(v) +
                         " is not a non-negative integer (feature mode int)");
      }
    }
  }
}

}  // namespace

Graph::Graph(std::size_t num_nodes, std::vector<Edge> edges, Matrix features,
             FeatureMode mode, std::optional<std::vector<int>> labels,
             std::vector<double> edge_weights, GraphOptions options)
    : num_nodes_(num_nodes), features_(std::move(features)), mode_(mode), labels_(std::move(labels)) {
  if (num_nodes_ == 0) throw GraphError("graph must have at least one node");
  if (!edge_weights.empty() && edge_weights.size() != edges.size()) {
    throw GraphError("edge_weights has " + std::to_string(edge_weights.size()) +
                     " entries for " + std::to_string(edges.size()) + " edges");
  }
  const auto bound = static_cast<long long>(num_nodes_);
  std::vector<std::size_t> order(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto& [u, v] = edges[e];
    if (u < 0 || u >= bound || v < 0 || v >= bound) {
      throw GraphError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") has an endpoint outside the node-index bound [0, " +
                       std::to_string(num_nodes_) + ")");
    }
    if (u == v && !options.allow_self_loops) {
      throw GraphError("self-loop on node " + std::to_string(u) + " is not allowed");
    }
    if (u > v) std::swap(u, v);
    order[e] = e;
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  edges_.reserve(edges.size());
  for (std::size_t e : order) {
    if (!edges_.empty() && edges_.back() == edges[e]) {
      throw GraphError("duplicate edge (" + std::to_string(edges[e].u) + ", " +
                       std::to_string(edges[e].v) + ")");
    }
    edges_.push_back(edges[e]);
    if (!edge_weights.empty()) {
      const double w = edge_weights[e];
      if (!std::isfinite(w)) throw GraphError("edge weight is not finite");
      edge_weights_.push_back(w);
    }
  }

  validate_features(features_, num_nodes_, mode_);
  if (labels_ && labels_->size() != num_nodes_) {
    throw GraphError("node_labels has " + std::to_string(labels_->size()) +
                     " entries, expected num_nodes = " + std::to_string(num_nodes_));
  }

  adjacency_.assign(num_nodes_, {});
  adjacency_weights_.assign(num_nodes_, {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [u, v] = edges_[e];
    const double w = edge_weights_.empty() ? 1.0 : edge_weights_[e];
    adjacency_[static_cast<std::size_t>(u)].push_back(v);
    adjacency_weights_[static_cast<std::size_t>(u)].push_back(w);
    if (u != v) {
      adjacency_[static_cast<std::size_t>(v)].push_back(u);
      adjacency_weights_[static_cast<std::size_t>(v)].push_back(w);
    }
  }
  // Edges are sorted by (u, v), so lists for u come out sorted; lists filled
  // through the v side need an explicit sort.
  for (std::size_t v = 0; v < num_nodes_; ++v) {
    auto& adj = adjacency_[v];
    auto& wts = adjacency_weights_[v];
    std::vector<std::size_t> idx(adj.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return adj[a] < adj[b]; });
    std::vector<int> sorted_adj(adj.size());
    std::vector<double> sorted_w(adj.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      sorted_adj[i] = adj[idx[i]];
      sorted_w[i] = wts[idx[i]];
    }
    adj = std::move(sorted_adj);
    wts = std::move(sorted_w);
  }
}

Graph Graph::with_unit_features(std::size_t num_nodes, std::vector<Edge> edges) {
  return Graph(num_nodes, std::move(edges), Matrix::Ones(static_cast<Eigen::Index>(num_nodes), 1),
               FeatureMode::Integer);
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= num_nodes_ ||
      static_cast<std::size_t>(v) >= num_nodes_) {
    return false;
  }
  const auto& adj = adjacency_[static_cast<std::size_t>(u)];
  return std::binary_search(adj.begin(), adj.end(), v);
}

bool Graph::has_self_loops() const noexcept {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.u == e.v; });
}

Graph Graph::with_features(Matrix features, FeatureMode mode) const {
  GraphOptions options;
  options.allow_self_loops = has_self_loops();
  return Graph(num_nodes_, edges_, std::move(features), mode, labels_, edge_weights_, options);
}

Matrix Graph::adjacency_matrix() const {
  const auto n = static_cast<Eigen::Index>(num_nodes_);
  Matrix a = Matrix::Zero(n, n);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const double w = edge_weights_.empty() ? 1.0 : edge_weights_[e];
    a(edges_[e].u, edges_[e].v) = w;
    a(edges_[e].v, edges_[e].u) = w;
  }
  return a;
}

std::vector<std::size_t> Graph::degree_sequence() const {
  std::vector<std::size_t> deg(num_nodes_);
  for (std::size_t v = 0; v < num_nodes_; ++v) deg[v] = adjacency_[v].size();
  std::sort(deg.begin(), deg.end());
  return deg;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.num_nodes_ == b.num_nodes_ && a.edges_ == b.edges_ &&
         a.edge_weights_ == b.edge_weights_ && a.mode_ == b.mode_ && a.labels_ == b.labels_ &&
         a.features_.rows() == b.features_.rows() && a.features_.cols() == b.features_.cols() &&
         a.features_ == b.features_;
}

Graph complement(const Graph& g) {
  if (g.has_self_loops()) throw GraphError("complement requires a graph without self-loops");
  const int n = static_cast<int>(g.num_nodes());
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!g.has_edge(u, v)) edges.push_back({u, v});
    }
  }
  return Graph(g.num_nodes(), std::move(edges), g.features(), g.feature_mode(), g.labels());
}

Graph permute(const Graph& g, std::span<const int> perm) {
  const std::size_t n = g.num_nodes();
  if (perm.size() != n) throw GraphError("permutation size does not match num_nodes");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[static_cast<std::size_t>(p)]) {
      throw GraphError("not a permutation of [0, num_nodes)");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const auto& e : g.edges()) {
    edges.push_back({perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]});
  }
  Matrix x(g.features().rows(), g.features().cols());
  for (std::size_t i = 0; i < n; ++i) x.row(perm[i]) = g.features().row(static_cast<Eigen::Index>(i));
  std::optional<std::vector<int>> labels;
  if (g.labels()) {
    labels.emplace(n);
    for (std::size_t i = 0; i < n; ++i) (*labels)[static_cast<std::size_t>(perm[i])] = (*g.labels())[i];
  }
  GraphOptions options;
  options.allow_self_loops = g.has_self_loops();
  return Graph(n, std::move(edges), std::move(x), g.feature_mode(), std::move(labels),
               g.edge_weights(), options);
}

}  // namespace poolex
