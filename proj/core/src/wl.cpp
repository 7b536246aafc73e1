#include "poolex/wl.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "poolex/error.hpp"

namespace poolex {

namespace {

template <class Key>
std::vector<int> rank_keys(const std::vector<Key>& keys, std::size_t* palette_size) {
  std::vector<Key> unique = keys;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  std::vector<int> ranks(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    ranks[i] = static_cast<int>(std::lower_bound(unique.begin(), unique.end(), keys[i]) - unique.begin());
  }
  if (palette_size) *palette_size = unique.size();
  return ranks;
}

struct Union {
  const Graph& g1;
  const Graph& g2;
  std::size_t n1;
  std::size_t n;

  Union(const Graph& a, const Graph& b)
      : g1(a), g2(b), n1(a.num_nodes()), n(a.num_nodes() + b.num_nodes()) {}

  template <class F>
  void for_neighbors(std::size_t v, F&& f) const {
    if (v < n1) {
      for (int u : g1.neighbors(static_cast<int>(v))) f(static_cast<std::size_t>(u));
    } else {
      for (int u : g2.neighbors(static_cast<int>(v - n1))) f(static_cast<std::size_t>(u) + n1);
    }
  }
};

std::vector<int> union_initial_colors(const Graph& g1, const Graph& g2, WlInit init,
                                      std::size_t* palette) {
  const std::size_t n1 = g1.num_nodes();
  const std::size_t n = n1 + g2.num_nodes();
  switch (init) {
    case WlInit::Uniform:
      *palette = 1;
      return std::vector<int>(n, 0);
    case WlInit::FromLabels: {
      if (!g1.labels() || !g2.labels()) {
        throw GraphError("WL init from labels requires node_labels on both graphs");
      }
      std::vector<int> keys(*g1.labels());
      keys.insert(keys.end(), g2.labels()->begin(), g2.labels()->end());
      return rank_keys(keys, palette);
    }
    case WlInit::FromIntegerFeatures: {
      if (g1.feature_mode() != FeatureMode::Integer || g2.feature_mode() != FeatureMode::Integer) {
        throw GraphError("WL init from integer features requires feature mode int on both graphs");
      }
      if (g1.feature_dim() != g2.feature_dim()) {
        throw GraphError("WL init from features requires equal feature_dim");
      }
      std::vector<std::vector<double>> keys;
      keys.reserve(n);
      for (const Graph* g : {&g1, &g2}) {
        const auto& x = g->features();
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
          keys.emplace_back(x.row(i).begin(), x.row(i).end());
        }
      }
      return rank_keys(keys, palette);
    }
  }
  throw GraphError("unknown WL init");
}

/// One refinement step over the disjoint union; returns the new class count.
std::size_t refine_step(const Union& u, std::vector<int>& colors) {
  std::vector<std::vector<int>> signatures(u.n);
  for (std::size_t v = 0; v < u.n; ++v) {
    auto& sig = signatures[v];
    sig.push_back(colors[v]);
    u.for_neighbors(v, [&](std::size_t w) { sig.push_back(colors[w]); });
    std::sort(sig.begin() + 1, sig.end());
  }
  std::size_t palette = 0;
  colors = rank_keys(signatures, &palette);
  return palette;
}

ColoringResult slice(const std::vector<int>& colors, std::size_t begin, std::size_t end,
                     std::size_t rounds) {
  ColoringResult r;
  r.colors.assign(colors.begin() + static_cast<std::ptrdiff_t>(begin),
                  colors.begin() + static_cast<std::ptrdiff_t>(end));
  std::map<int, std::size_t> counts;
  for (int c : r.colors) ++counts[c];
  r.histogram.assign(counts.begin(), counts.end());
  r.rounds = rounds;
  return r;
}

bool histograms_differ(const std::vector<int>& colors, std::size_t n1) {
  std::vector<int> a(colors.begin(), colors.begin() + static_cast<std::ptrdiff_t>(n1));
  std::vector<int> b(colors.begin() + static_cast<std::ptrdiff_t>(n1), colors.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a != b;
}

}  // namespace

WlInit default_wl_init(const Graph& g1, const Graph& g2) {
  if (g1.labels() && g2.labels()) return WlInit::FromLabels;
  if (g1.feature_mode() == FeatureMode::Integer && g2.feature_mode() == FeatureMode::Integer &&
      g1.feature_dim() == g2.feature_dim()) {
    return WlInit::FromIntegerFeatures;
  }
  return WlInit::Uniform;
}

std::vector<int> initial_colors(const Graph& g1, const Graph& g2, WlInit init,
                                std::vector<int>* right_out) {
  std::size_t palette = 0;
  auto all = union_initial_colors(g1, g2, init, &palette);
  if (right_out) {
    right_out->assign(all.begin() + static_cast<std::ptrdiff_t>(g1.num_nodes()), all.end());
  }
  all.resize(g1.num_nodes());
  return all;
}

JointColoring wl_refine_joint(const Graph& g1, const Graph& g2, WlInit init,
                              std::optional<std::size_t> max_rounds) {
  const Union u(g1, g2);
  std::size_t classes = 0;
  std::vector<int> colors = union_initial_colors(g1, g2, init, &classes);
  std::size_t rounds = 0;
  while (!max_rounds || rounds < *max_rounds) {
    std::vector<int> next = colors;
    const std::size_t next_classes = refine_step(u, next);
    // Refinement never merges classes, so an unchanged count means an
    // unchanged partition.
    if (next_classes == classes) break;
    colors = std::move(next);
    classes = next_classes;
    ++rounds;
  }
  JointColoring out;
  out.left = slice(colors, 0, u.n1, rounds);
  out.right = slice(colors, u.n1, u.n, rounds);
  out.palette_size = classes;
  return out;
}

bool wl_distinguishable(const Graph& g1, const Graph& g2) {
  if (g1.num_nodes() != g2.num_nodes()) return true;
  const auto joint = wl_refine_joint(g1, g2, default_wl_init(g1, g2));
  return joint.left.histogram != joint.right.histogram;
}

std::optional<std::size_t> wl_divergence_round(const Graph& g1, const Graph& g2, WlInit init) {
  if (g1.num_nodes() != g2.num_nodes()) return 0;
  const Union u(g1, g2);
  std::size_t classes = 0;
  std::vector<int> colors = union_initial_colors(g1, g2, init, &classes);
  for (std::size_t round = 0;; ++round) {
    if (histograms_differ(colors, u.n1)) return round;
    const std::size_t next_classes = refine_step(u, colors);
    if (next_classes == classes) return std::nullopt;
    classes = next_classes;
  }
}

}  // namespace poolex
