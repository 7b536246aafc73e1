#include "poolex/isomorphism.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "poolex/error.hpp"

namespace poolex {

namespace {

struct Search {
  const Graph& a;
  const Graph& b;
  std::vector<int> color_a;
  std::vector<int> color_b;
  std::vector<int> order;    // nodes of a in assignment order
  std::vector<int> mapping;  // a -> b, -1 if unassigned
  std::vector<bool> used;

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    const int v = order[depth];
    for (int w = 0; w < static_cast<int>(b.num_nodes()); ++w) {
      if (used[static_cast<std::size_t>(w)]) continue;
      if (color_a[static_cast<std::size_t>(v)] != color_b[static_cast<std::size_t>(w)]) continue;
      if (a.degree(v) != b.degree(w)) continue;
      bool consistent = true;
      for (std::size_t i = 0; i < depth && consistent; ++i) {
        const int u = order[i];
        consistent = a.has_edge(u, v) == b.has_edge(mapping[static_cast<std::size_t>(u)], w);
      }
      if (!consistent) continue;
      mapping[static_cast<std::size_t>(v)] = w;
      used[static_cast<std::size_t>(w)] = true;
      if (extend(depth + 1)) return true;
      used[static_cast<std::size_t>(w)] = false;
      mapping[static_cast<std::size_t>(v)] = -1;
    }
    return false;
  }
};

}  // namespace

bool brute_force_isomorphic(const Graph& g1, const Graph& g2) {
  return brute_force_isomorphic(g1, g2, default_wl_init(g1, g2));
}

bool brute_force_isomorphic(const Graph& g1, const Graph& g2, WlInit coloring) {
  if (g1.num_nodes() > kBruteForceNodeLimit || g2.num_nodes() > kBruteForceNodeLimit) {
    throw Error("brute_force_isomorphic supports at most " + std::to_string(kBruteForceNodeLimit) +
                " nodes per graph");
  }
  if (g1.num_nodes() != g2.num_nodes() || g1.num_edges() != g2.num_edges()) return false;
  if (g1.degree_sequence() != g2.degree_sequence()) return false;

  Search s{g1, g2, {}, {}, {}, {}, {}};
  s.color_a = initial_colors(g1, g2, coloring, &s.color_b);
  auto ca = s.color_a, cb = s.color_b;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  if (ca != cb) return false;

  // High-degree nodes first: they constrain the most later choices.
  s.order.resize(g1.num_nodes());
  std::iota(s.order.begin(), s.order.end(), 0);
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](int x, int y) { return g1.degree(x) > g1.degree(y); });
  s.mapping.assign(g1.num_nodes(), -1);
  s.used.assign(g2.num_nodes(), false);
  return s.extend(0);
}

}  // namespace poolex
