#include "poolex/mp.hpp"

#include <cmath>

#include "poolex/error.hpp"
#include "poolex/rng.hpp"
#include "poolex/wl.hpp"

namespace poolex {

std::string to_string(Activation a) {
  switch (a) {
    case Activation::Elu: return "elu";
    case Activation::Relu: return "relu";
    case Activation::Identity: return "identity";
  }
  return "?";
}

Activation parse_activation(const std::string& text) {
  if (text == "elu") return Activation::Elu;
  if (text == "relu") return Activation::Relu;
  if (text == "identity") return Activation::Identity;
  throw Error("unknown activation '" + text + "'");
}

std::string to_string(Readout r) {
  switch (r) {
    case Readout::Sum: return "sum";
    case Readout::Mean: return "mean";
    case Readout::Max: return "max";
  }
  return "?";
}

Readout parse_readout(const std::string& text) {
  if (text == "sum") return Readout::Sum;
  if (text == "mean") return Readout::Mean;
  if (text == "max") return Readout::Max;
  throw Error("unknown readout '" + text + "' (expected sum, mean or max)");
}

EmbeddingMatrix::EmbeddingMatrix(Matrix v, FeatureMode m) : values(std::move(v)), mode(m) {
  if (!values.allFinite()) throw NumericError("embedding matrix has non-finite entries");
  if (mode == FeatureMode::Integer && !(values.array() == values.array().floor()).all()) {
    throw NumericError("integer-mode embedding has non-integral entries");
  }
}

Mlp::Mlp(const MlpSpec& spec) : activation_(spec.activation) {
  if (spec.layer_widths.empty()) throw GraphError("MlpSpec.layer_widths must not be empty");
  input_dim_ = spec.layer_widths.front();
  Rng rng(spec.seed);
  for (std::size_t l = 0; l + 1 < spec.layer_widths.size(); ++l) {
    const auto in = static_cast<Eigen::Index>(spec.layer_widths[l]);
    const auto out = static_cast<Eigen::Index>(spec.layer_widths[l + 1]);
    Matrix w(in, out);
    for (Eigen::Index i = 0; i < in; ++i) {
      for (Eigen::Index j = 0; j < out; ++j) w(i, j) = rng.uniform(-spec.weight_scale, spec.weight_scale);
    }
    RowVector b(out);
    for (Eigen::Index j = 0; j < out; ++j) b(j) = rng.uniform(-spec.weight_scale, spec.weight_scale);
    weights_.push_back(std::move(w));
    biases_.push_back(std::move(b));
  }
}

std::size_t Mlp::output_dim() const noexcept {
  return weights_.empty() ? input_dim_ : static_cast<std::size_t>(weights_.back().cols());
}

Matrix Mlp::forward(const Matrix& x) const {
  if (static_cast<std::size_t>(x.cols()) != input_dim_) {
    throw GraphError("MLP input width " + std::to_string(x.cols()) + " does not match spec width " +
                     std::to_string(input_dim_));
  }
  Matrix h = x;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    Matrix next = h * weights_[l];
    next.rowwise() += biases_[l];
    if (l + 1 < weights_.size()) {
      switch (activation_) {
        case Activation::Elu:
          next = next.unaryExpr([](double v) { return v > 0.0 ? v : std::expm1(v); });
          break;
        case Activation::Relu:
          next = next.cwiseMax(0.0);
          break;
        case Activation::Identity:
          break;
      }
    }
    if (!next.allFinite()) {
      throw NumericError("non-finite activation in MLP layer " + std::to_string(l));
    }
    h = std::move(next);
  }
  return h;
}

GinLayer::GinLayer(double epsilon, std::optional<MlpSpec> mlp, bool closed_neighborhood)
    : epsilon_(epsilon), closed_(closed_neighborhood) {
  if (mlp) mlp_.emplace(*mlp);
}

EmbeddingMatrix gin_forward(const Graph& g, const EmbeddingMatrix& x, const GinLayer& layer) {
  if (x.rows() != g.num_nodes()) {
    throw GraphError("gin_forward: embedding has " + std::to_string(x.rows()) +
                     " rows for a graph with " + std::to_string(g.num_nodes()) + " nodes");
  }
  const double self = 1.0 + layer.epsilon() + (layer.closed_neighborhood() ? 1.0 : 0.0);
  Matrix agg = self * x.values;
  for (int v = 0; v < static_cast<int>(g.num_nodes()); ++v) {
    for (int u : g.neighbors(v)) {
      if (u == v) continue;  // self-loops are covered by the self term
      agg.row(v) += x.values.row(u);
    }
  }
  const bool integral_scale = self >= 0.0 && std::floor(self) == self;
  if (!layer.mlp() || layer.mlp()->is_identity()) {
    const auto mode =
        x.mode == FeatureMode::Integer && integral_scale ? FeatureMode::Integer : FeatureMode::Real;
    return {std::move(agg), mode};
  }
  return {layer.mlp()->forward(agg), FeatureMode::Real};
}

std::pair<EmbeddingMatrix, EmbeddingMatrix> exact_color_embedding(const Graph& g1, const Graph& g2,
                                                                   std::optional<std::size_t> rounds) {
  const auto joint = wl_refine_joint(g1, g2, default_wl_init(g1, g2), rounds);
  const auto palette = static_cast<Eigen::Index>(joint.palette_size);
  auto one_hot = [palette](const std::vector<int>& colors) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(colors.size()), palette);
    for (std::size_t i = 0; i < colors.size(); ++i) m(static_cast<Eigen::Index>(i), colors[i]) = 1.0;
    return EmbeddingMatrix(std::move(m), FeatureMode::Integer);
  };
  return {one_hot(joint.left.colors), one_hot(joint.right.colors)};
}

RowVector global_readout(const EmbeddingMatrix& x, Readout kind) {
  if (x.rows() == 0) throw GraphError("global_readout: empty embedding matrix");
  switch (kind) {
    case Readout::Sum: return x.values.colwise().sum();
    case Readout::Mean: return x.values.colwise().mean();
    case Readout::Max: return x.values.colwise().maxCoeff();
  }
  throw GraphError("unknown readout");
}

EmbeddingMatrix random_mlp_forward(const EmbeddingMatrix& x, const MlpSpec& spec) {
  const Mlp mlp(spec);
  if (mlp.is_identity()) {
    if (x.cols() != mlp.input_dim()) {
      throw GraphError("MLP input width " + std::to_string(x.cols()) + " does not match spec width " +
                       std::to_string(mlp.input_dim()));
    }
    return x;
  }
  return {mlp.forward(x.values), FeatureMode::Real};
}

}  // namespace poolex
