#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "poolex/pooling.hpp"

namespace poolex::detail {

// Stream tags for derive_seed; one per operator so configs sharing a seed
// still draw independent parameters.
enum SeedStream : std::uint64_t {
  kStreamDense = 1,
  kStreamRandDense = 2,
  kStreamKmis = 3,
  kStreamEcpool = 4,
  kStreamTopk = 5,
  kStreamSagpool = 6,
  kStreamRandSparse = 7,
};

/// Pooled topology with binary S: supernodes a != b are adjacent iff some edge
/// of g crosses between their members. Unit weights, no self-loops.
std::vector<Edge> contract_edges(const Graph& g, const std::vector<int>& cluster_of);

Graph make_pooled_graph(std::size_t k, std::vector<Edge> edges, const EmbeddingMatrix& features,
                        std::vector<double> weights = {});

/// Projector from cfg.projector, or seeded uniform in [-1, 1]^dim.
std::vector<double> projector_for(const PoolConfig& cfg, std::size_t dim, std::uint64_t stream);

/// x p / |p| per row.
std::vector<double> project_scores(const Matrix& x, const std::vector<double>& p);

PooledGraph pool_dense(const Graph& g, const EmbeddingMatrix& x, const PoolConfig& cfg, bool random);
PooledGraph pool_graclus(const Graph& g, const EmbeddingMatrix& x, const PoolConfig& cfg, bool on_complement);
PooledGraph pool_kmis(const Graph& g, const EmbeddingMatrix& x, const PoolConfig& cfg);
PooledGraph pool_ecpool(const Graph& g, const EmbeddingMatrix& x, const PoolConfig& cfg);
PooledGraph pool_topk(OperatorId op, const Graph& g, const EmbeddingMatrix& x, const PoolConfig& cfg);

struct LevelResult {
  PoolLevel level;
  Graph graph;
};

using LevelFn = std::function<LevelResult(const Graph&, const EmbeddingMatrix&, std::size_t)>;

/// Shared driver for halving operators: applies `level` until
/// K <= target_supernodes(ratio, N), composing the assignments.
PooledGraph run_halving(OperatorId op, const Graph& g, const EmbeddingMatrix& x, const PoolConfig& cfg,
                        const LevelFn& level);

}  // namespace poolex::detail
