#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "poolex/assignment.hpp"
#include "poolex/graph.hpp"
#include "poolex/mp.hpp"

namespace poolex {

/// Pooling operators in the catalog. CLI names in parentheses.
enum class OperatorId {
  Dense,       ///< softmax cluster assignment (dense)
  RandDense,   ///< row-normalized random S (rand-dense)
  Graclus,     ///< greedy heavy-edge matching (graclus)
  CmpGraclus,  ///< graclus on the complement graph (cmp-graclus)
  Kmis,        ///< maximal k-independent set centroids (kmis)
  Ecpool,      ///< edge contraction (ecpool)
  Topk,        ///< projector score, keep top K (topk)
  Sagpool,     ///< GIN score, keep top K (sagpool)
  RandSparse,  ///< normal random score, keep top K (rand-sparse)
  Identity     ///< S = I (identity)
};

/// Which size parameter an operator accepts.
enum class SizeKnob {
  None,       ///< identity
  Ratio,      ///< halving operators: recurse until K / N <= ratio
  K,          ///< kmis: hop radius k
  RatioOrK    ///< direct control: K = k, or max(1, ceil(ratio * N))
};

struct OperatorInfo {
  OperatorId id;
  std::string_view name;
  SizeKnob knob;
  /// Emits S with constant row sums and RED = S^T X (possibly r-weighted).
  bool satisfies_conditions;
  /// Result depends on node numbering beyond features and topology
  /// (random draws per index, or lowest-index tie-breaking).
  bool order_dependent;
};

const OperatorInfo& operator_info(OperatorId id);
std::string to_string(OperatorId id);
/// Throws Error for unknown names.
OperatorId parse_operator(std::string_view name);
/// Catalog order: dense, rand-dense, graclus, cmp-graclus, kmis, ecpool, topk,
/// sagpool, rand-sparse, identity.
const std::vector<OperatorId>& all_operators();

struct PoolConfig {
  std::optional<double> ratio;
  std::optional<std::size_t> k;
  std::uint64_t seed = 0;
  /// Maximum number of halving rounds for graclus, cmp-graclus and ecpool.
  std::size_t recursion_limit = 64;
  /// Replaces the seeded projector of topk, sagpool and kmis.
  std::optional<std::vector<double>> projector;

  static PoolConfig with_ratio(double r, std::uint64_t seed = 0) {
    PoolConfig c;
    c.ratio = r;
    c.seed = seed;
    return c;
  }
  static PoolConfig with_k(std::size_t k, std::uint64_t seed = 0) {
    PoolConfig c;
    c.k = k;
    c.seed = seed;
    return c;
  }
};

/// Throws PoolError unless exactly the knob the operator accepts is set.
void validate_config(OperatorId op, const PoolConfig& cfg);

/// One SEL/RED/CON application. Halving operators stack several.
struct PoolLevel {
  AssignmentMatrix assignment;
  EmbeddingMatrix input;
  EmbeddingMatrix output;
  /// ECPool per-supernode weights r (output = r * S^T input); empty otherwise.
  std::vector<double> r;
};

struct PooledGraph {
  Graph graph;
  EmbeddingMatrix features;
  /// Composite assignment from the input nodes to the final supernodes.
  AssignmentMatrix assignment;
  OperatorId op;
  std::vector<PoolLevel> levels;
  /// Selection scores of the input nodes (topk, sagpool, rand-sparse, kmis).
  std::vector<double> scores;
  double achieved_ratio = 1.0;

  std::size_t num_supernodes() const noexcept { return graph.num_nodes(); }
};

/// Runs operator `op` on (g, x). Deterministic for a fixed cfg.seed.
///
/// Throws PoolError when cfg does not match the operator's knob, on a shape
/// mismatch, or when a halving operator cannot reach the requested ratio
/// within cfg.recursion_limit (the message names the achieved ratio).
PooledGraph pool(OperatorId op, const Graph& g, const EmbeddingMatrix& x, const PoolConfig& cfg);

/// K = max(1, ceil(ratio * n)) with a small guard against ratio*n landing a
/// hair above an integer.
std::size_t target_supernodes(double ratio, std::size_t n);

}  // namespace poolex
