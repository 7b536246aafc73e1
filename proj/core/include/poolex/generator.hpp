#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "poolex/graph.hpp"
#include "poolex/rng.hpp"

namespace poolex {

struct NodeRange {
  std::size_t lower = 16;
  std::size_t upper = 32;
};

struct GeneratorOptions {
  /// Rejection-sampling attempts per pair before giving up.
  std::size_t max_attempts = 2000;
};

/// Connected simple graph on n nodes with unit integer features: a random
/// spanning tree plus extra edges, m uniform in [n - 1, min(ceil(2.4 n), max)].
/// Throws GenerationError for n == 0.
Graph random_connected_graph(std::size_t n, Rng& rng);

/// Same-size, connected, non-isomorphic pairs whose uniform-init WL histograms
/// first diverge at round >= difficulty. The twin of a random base graph is
/// built by moving one edge (difficulty <= 1) or by a degree-preserving
/// double-edge swap (difficulty >= 2). Pair i draws from derive_seed(seed, i).
///
/// Throws GenerationError when count == 0, the range is empty or starts at 0,
/// or a pair cannot be found within options.max_attempts.
std::vector<GraphPair> generate_wl_pairs(std::size_t count, NodeRange nodes, std::uint64_t seed,
                                         std::size_t difficulty = 1, const GeneratorOptions& options = {});

}  // namespace poolex
