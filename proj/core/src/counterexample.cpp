#include <stdexcept>

#include "poolex/digest.hpp"
#include "poolex/expressiveness.hpp"
#include "poolex/rng.hpp"
#include "poolex/wl.hpp"

namespace poolex {

namespace {

// Top-k with K = 2 keeps nodes {0, 1} for p > 0 and {2, 3} for p < 0. Neither
// pair is adjacent in either graph, so both branches pool to two isolated
// supernodes carrying the same gated features.
const std::vector<Edge> kLeftEdges = {{0, 2}, {0, 3}, {1, 3}};
const std::vector<Edge> kRightEdges = {{0, 3}, {1, 2}};

MultisetDigest topk_digest(const Graph& g, double sign) {
  PoolConfig cfg = PoolConfig::with_k(2);
  cfg.projector = std::vector<double>{sign};
  const auto pooled = pool(OperatorId::Topk, g, EmbeddingMatrix::from_graph(g), cfg);
  if (pooled.graph.num_edges() != 0) throw std::logic_error("counterexample: selected nodes are adjacent");
  return multiset_digest(pooled.features.values, DigestMode::quantized());
}

}  // namespace

GraphPair build_topk_counterexample(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x746f706bULL));
  Matrix x(4, 1);
  double value = 1.0 + static_cast<double>(rng.below(3));
  for (int i = 3; i >= 0; --i) {
    x(i, 0) = value;
    value += 1.0 + static_cast<double>(rng.below(3));
  }

  GraphPair pair{Graph(4, kLeftEdges, x, FeatureMode::Integer), Graph(4, kRightEdges, x, FeatureMode::Integer),
                 0, 1, true};

  if (!wl_distinguishable(pair.left, pair.right)) {
    throw std::logic_error("counterexample: pair is not WL-distinguishable");
  }
  for (double sign : {1.0, -1.0}) {
    if (!(topk_digest(pair.left, sign) == topk_digest(pair.right, sign))) {
      throw std::logic_error("counterexample: top-k separates the pair");
    }
  }
  return pair;
}

}  // namespace poolex
