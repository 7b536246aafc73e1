#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poolex/graph.hpp"
#include "poolex/matrix.hpp"

namespace poolex {

enum class Activation { Elu, Relu, Identity };

std::string to_string(Activation a);
Activation parse_activation(const std::string& text);

/// Shape and seed of an untrained MLP.
///
/// `layer_widths` = {in, h1, ..., out}; a single width is the identity map.
/// Weights and biases are drawn uniformly from [-weight_scale, weight_scale].
struct MlpSpec {
  std::vector<std::size_t> layer_widths;
  Activation activation = Activation::Elu;
  std::uint64_t seed = 0;
  double weight_scale = 1.0;
};

/// Node embeddings. Integer mode holds exact integers (see FeatureMode).
struct EmbeddingMatrix {
  Matrix values;
  FeatureMode mode = FeatureMode::Real;

  EmbeddingMatrix() = default;
  EmbeddingMatrix(Matrix v, FeatureMode m);

  static EmbeddingMatrix from_graph(const Graph& g) { return {g.features(), g.feature_mode()}; }

  std::size_t rows() const noexcept { return static_cast<std::size_t>(values.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(values.cols()); }
};

/// Materialized MLP. Activation is applied after every layer but the last.
class Mlp {
 public:
  explicit Mlp(const MlpSpec& spec);

  std::size_t input_dim() const noexcept { return input_dim_; }
  std::size_t output_dim() const noexcept;
  bool is_identity() const noexcept { return weights_.empty(); }

  /// Throws GraphError on a width mismatch and NumericError naming the layer
  /// index when a non-finite value appears.
  Matrix forward(const Matrix& x) const;

 private:
  std::size_t input_dim_;
  Activation activation_;
  std::vector<Matrix> weights_;
  std::vector<RowVector> biases_;
};

/// One GIN layer: mlp((1 + eps) * x_v + sum of x_u over the neighborhood).
///
/// By default the neighborhood is open (neighbors only, self term carried by
/// the 1 + eps factor). With `closed_neighborhood` x_v is also summed.
class GinLayer {
 public:
  explicit GinLayer(double epsilon = 0.0, std::optional<MlpSpec> mlp = std::nullopt,
                    bool closed_neighborhood = false);

  double epsilon() const noexcept { return epsilon_; }
  bool closed_neighborhood() const noexcept { return closed_; }
  const std::optional<Mlp>& mlp() const noexcept { return mlp_; }

 private:
  double epsilon_;
  std::optional<Mlp> mlp_;
  bool closed_;
};

EmbeddingMatrix gin_forward(const Graph& g, const EmbeddingMatrix& x, const GinLayer& layer);

/// One-hot encoding of the joint 1-WL colors after `rounds` refinement steps
/// (to stabilization when nullopt). Column sums of the two results differ iff
/// the color histograms at that round differ.
std::pair<EmbeddingMatrix, EmbeddingMatrix> exact_color_embedding(
    const Graph& g1, const Graph& g2, std::optional<std::size_t> rounds = std::nullopt);

enum class Readout { Sum, Mean, Max };

std::string to_string(Readout r);
Readout parse_readout(const std::string& text);

RowVector global_readout(const EmbeddingMatrix& x, Readout kind);

EmbeddingMatrix random_mlp_forward(const EmbeddingMatrix& x, const MlpSpec& spec);

}  // namespace poolex
