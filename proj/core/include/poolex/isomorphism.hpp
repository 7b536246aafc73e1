#pragma once

#include <cstddef>

#include "poolex/graph.hpp"
#include "poolex/wl.hpp"

namespace poolex {

inline constexpr std::size_t kBruteForceNodeLimit = 10;

/// Exact isomorphism test by permutation search with degree and color pruning.
///
/// The mapping must preserve the initial coloring WL would use for this pair
/// (labels or integer features), so for uniform features this is plain graph
/// isomorphism. Throws Error when either graph exceeds kBruteForceNodeLimit
/// nodes.
bool brute_force_isomorphic(const Graph& g1, const Graph& g2);
bool brute_force_isomorphic(const Graph& g1, const Graph& g2, WlInit coloring);

}  // namespace poolex
