#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "poolex/graph.hpp"

namespace poolex {

/// Initial coloring for 1-WL refinement.
enum class WlInit {
  Uniform,             ///< every node starts with color 0
  FromLabels,          ///< node_labels
  FromIntegerFeatures  ///< distinct integer feature rows
};

/// Stable (or round-limited) 1-WL coloring of one graph.
struct ColoringResult {
  std::vector<int> colors;                             ///< per node
  std::vector<std::pair<int, std::size_t>> histogram;  ///< sorted by color
  std::size_t rounds = 0;  ///< refinement rounds that split at least one class
};

/// Colors of both graphs drawn from one shared palette.
struct JointColoring {
  ColoringResult left;
  ColoringResult right;
  std::size_t palette_size = 0;
};

/// Labels when both graphs carry them, else integer features when both are in
/// integer mode, else uniform.
WlInit default_wl_init(const Graph& g1, const Graph& g2);

/// Initial color keys used by both WL and the brute-force isomorphism check:
/// equal keys mean the nodes must map onto each other.
std::vector<int> initial_colors(const Graph& g1, const Graph& g2, WlInit init,
                                std::vector<int>* right_out);

/// Joint 1-WL refinement of g1 and g2.
///
/// Each round a node's new color is the rank of (own color, sorted neighbor
/// colors) among all signatures of both graphs, so palettes are canonical and
/// refining (g2, g1) gives the same colors as (g1, g2) with sides swapped.
/// Refinement stops when the number of classes stops growing, or after
/// `max_rounds` rounds when given. Throws GraphError if `init` does not fit the
/// graphs (missing labels, real-mode features).
JointColoring wl_refine_joint(const Graph& g1, const Graph& g2, WlInit init,
                              std::optional<std::size_t> max_rounds = std::nullopt);

/// True iff the stable joint histograms differ. Graphs of different size are
/// always distinguishable.
bool wl_distinguishable(const Graph& g1, const Graph& g2);

/// First refinement round at which the two histograms differ (0 = already
/// under the initial coloring), or nullopt when 1-WL cannot separate them.
std::optional<std::size_t> wl_divergence_round(const Graph& g1, const Graph& g2, WlInit init);

}  // namespace poolex
