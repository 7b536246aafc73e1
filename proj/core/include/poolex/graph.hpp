#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "poolex/matrix.hpp"

namespace poolex {

/// How feature entries are to be interpreted.
///
/// Integer mode requires every entry to be a non-negative integer; such
/// values are held in doubles and stay exact below 2^53.
enum class FeatureMode { Integer, Real };

std::string to_string(FeatureMode mode);
FeatureMode parse_feature_mode(const std::string& text);

/// Undirected edge with u <= v.
struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct GraphOptions {
  bool allow_self_loops = false;
};

/// Immutable undirected graph with node features.
///
/// Edges are kept sorted as (min, max) pairs; each adjacency list is sorted by
/// neighbor id so every traversal is deterministic. Edge weights are optional
/// (empty means unit weights).
class Graph {
 public:
  Graph(std::size_t num_nodes, std::vector<Edge> edges, Matrix features,
        FeatureMode mode, std::optional<std::vector<int>> labels = std::nullopt,
        std::vector<double> edge_weights = {}, GraphOptions options = {});

  /// Graph with a single all-ones integer feature column.
  static Graph with_unit_features(std::size_t num_nodes, std::vector<Edge> edges);

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const int> neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  std::span<const double> neighbor_weights(int v) const {
    return adjacency_weights_[static_cast<std::size_t>(v)];
  }
  std::size_t degree(int v) const { return adjacency_[static_cast<std::size_t>(v)].size(); }
  bool has_edge(int u, int v) const;

  bool weighted() const noexcept { return !edge_weights_.empty(); }
  /// Aligned with edges(); empty for unit-weight graphs.
  const std::vector<double>& edge_weights() const noexcept { return edge_weights_; }

  const Matrix& features() const noexcept { return features_; }
  std::size_t feature_dim() const noexcept { return static_cast<std::size_t>(features_.cols()); }
  FeatureMode feature_mode() const noexcept { return mode_; }
  const std::optional<std::vector<int>>& labels() const noexcept { return labels_; }
  bool has_self_loops() const noexcept;

  /// Same topology and labels, new feature matrix.
  Graph with_features(Matrix features, FeatureMode mode) const;

  /// Dense (weighted) adjacency matrix.
  Matrix adjacency_matrix() const;

  std::vector<std::size_t> degree_sequence() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::size_t num_nodes_;
  std::vector<Edge> edges_;
  std::vector<double> edge_weights_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<double>> adjacency_weights_;
  Matrix features_;
  FeatureMode mode_;
  std::optional<std::vector<int>> labels_;
};

/// Two graphs compared by the WL and pooling machinery.
struct GraphPair {
  Graph left;
  Graph right;
  int label_left = 0;
  int label_right = 1;
  bool claimed_wl_distinguishable = true;

  friend bool operator==(const GraphPair&, const GraphPair&) = default;
};

struct DatasetStats {
  std::size_t num_graphs = 0;
  std::size_t num_pairs = 0;
  double mean_nodes = 0.0;
  double mean_edges = 0.0;
  std::size_t feature_dim = 0;
};

/// Complement over unordered node pairs; features and labels are copied.
/// Throws GraphError if `g` has self-loops.
Graph complement(const Graph& g);

/// Relabels nodes: node i of `g` becomes node perm[i] of the result.
Graph permute(const Graph& g, std::span<const int> perm);

}  // namespace poolex
