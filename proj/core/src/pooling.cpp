#include "poolex/pooling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "poolex/error.hpp"
#include "poolex/rng.hpp"
#include "pool_internal.hpp"

namespace poolex {

namespace {

// clang-format off
constexpr std::array<OperatorInfo, 10> kCatalog{{
    {OperatorId::Dense,      "dense",       SizeKnob::RatioOrK, true,  false},
    {OperatorId::RandDense,  "rand-dense",  SizeKnob::RatioOrK, true,  true},
    {OperatorId::Graclus,    "graclus",     SizeKnob::Ratio,    true,  true},
    {OperatorId::CmpGraclus, "cmp-graclus", SizeKnob::Ratio,    true,  true},
    {OperatorId::Kmis,       "kmis",        SizeKnob::K,        true,  false},
    {OperatorId::Ecpool,     "ecpool",      SizeKnob::Ratio,    true,  false},
    {OperatorId::Topk,       "topk",        SizeKnob::RatioOrK, false, false},
    {OperatorId::Sagpool,    "sagpool",     SizeKnob::RatioOrK, false, false},
    {OperatorId::RandSparse, "rand-sparse", SizeKnob::RatioOrK, false, true},
    {OperatorId::Identity,   "identity",    SizeKnob::None,     true,  false},
}};
// clang-format on

std::string format_ratio(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", r);
  return buf;
}

}  // namespace

const OperatorInfo& operator_info(OperatorId id) {
  for (const auto& info : kCatalog) {
    if (info.id == id) return info;
  }
  throw Error("unknown operator id");
}

std::string to_string(OperatorId id) { return std::string(operator_info(id).name); }

OperatorId parse_operator(std::string_view name) {
  for (const auto& info : kCatalog) {
    if (info.name == name) return info.id;
  }
  throw Error("unknown pooling operator '" + std::string(name) + "'");
}

const std::vector<OperatorId>& all_operators() {
  static const std::vector<OperatorId> ops = [] {
    std::vector<OperatorId> v;
    for (const auto& info : kCatalog) v.push_back(info.id);
    return v;
  }();
  return ops;
}

void validate_config(OperatorId op, const PoolConfig& cfg) {
  const auto& info = operator_info(op);
  const std::string name(info.name);
  if (cfg.ratio && cfg.k) throw PoolError(name + ": set either ratio or k, not both");
  if (cfg.ratio && !(*cfg.ratio > 0.0 && *cfg.ratio <= 1.0)) {
    throw PoolError(name + ": ratio must lie in (0, 1], got " + std::to_string(*cfg.ratio));
  }
  switch (info.knob) {
    case SizeKnob::None:
      if (cfg.ratio || cfg.k) throw PoolError(name + " takes no size parameter");
      return;
    case SizeKnob::Ratio:
      if (!cfg.ratio) {
        throw PoolError(name + " halves the graph per level and is controlled by ratio only; "
                        "the number of supernodes cannot be set directly");
      }
      return;
    case SizeKnob::K:
      if (!cfg.k) throw PoolError(name + " is controlled by the hop radius k, not by a ratio");
      return;
    case SizeKnob::RatioOrK:
      if (!cfg.ratio && !cfg.k) throw PoolError(name + ": ratio or k is required");
      if (cfg.k && *cfg.k < 1) throw PoolError(name + ": k must be >= 1");
      return;
  }
}

std::size_t target_supernodes(double ratio, std::size_t n) {
  const double raw = ratio * static_cast<double>(n);
  const auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(n, 1));
}

namespace detail {

std::vector<Edge> contract_edges(const Graph& g, const std::vector<int>& cluster_of) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    int a = cluster_of[static_cast<std::size_t>(e.u)];
    int b = cluster_of[static_cast<std::size_t>(e.v)];
    if (a < 0 || b < 0 || a == b) continue;
    if (a > b) std::swap(a, b);
    edges.push_back({a, b});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

Graph make_pooled_graph(std::size_t k, std::vector<Edge> edges, const EmbeddingMatrix& features,
                        std::vector<double> weights) {
  FeatureMode mode = features.mode;
  if (mode == FeatureMode::Integer && (features.values.array() < 0.0).any()) mode = FeatureMode::Real;
  return Graph(k, std::move(edges), features.values, mode, std::nullopt, std::move(weights));
}

std::vector<double> projector_for(const PoolConfig& cfg, std::size_t dim, std::uint64_t stream) {
  if (cfg.projector) {
    if (cfg.projector->size() != dim) {
      throw PoolError("projector has " + std::to_string(cfg.projector->size()) +
                      " entries for feature_dim " + std::to_string(dim));
    }
    return *cfg.projector;
  }
  Rng rng(derive_seed(cfg.seed, stream));
  std::vector<double> p(dim);
  for (auto& v : p) v = rng.uniform(-1.0, 1.0);
  return p;
}

std::vector<double> project_scores(const Matrix& x, const std::vector<double>& p) {
  double norm = 0.0;
  for (double v : p) norm += v * v;
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) throw PoolError("projector must be nonzero");
  std::vector<double> s(static_cast<std::size_t>(x.rows()), 0.0);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) acc += x(i, j) * p[static_cast<std::size_t>(j)];
    s[static_cast<std::size_t>(i)] = acc / norm;
  }
  return s;
}

PooledGraph run_halving(OperatorId op, const Graph& g, const EmbeddingMatrix& x, const PoolConfig& cfg,
                        const LevelFn& level) {
  const std::size_t n = g.num_nodes();
  const std::size_t target = target_supernodes(*cfg.ratio, n);
  Graph current = g.with_features(x.values, x.mode == FeatureMode::Integer &&
                                                    !(x.values.array() < 0.0).any()
                                                ? FeatureMode::Integer
                                                : FeatureMode::Real);
  EmbeddingMatrix current_x = x;
  std::vector<PoolLevel> levels;
  std::optional<AssignmentMatrix> composite;
  auto achieved = [&] { return static_cast<double>(current.num_nodes()) / static_cast<double>(n); };

  while (current.num_nodes() > target) {
    if (levels.size() == cfg.recursion_limit) {
      throw PoolError(to_string(op) + ": target ratio " + format_ratio(*cfg.ratio) +
                      " not reached within recursion_limit " + std::to_string(cfg.recursion_limit) +
                      " (achieved ratio " + format_ratio(achieved()) + ")");
    }
    LevelResult res = level(current, current_x, levels.size());
    if (res.graph.num_nodes() == current.num_nodes()) {
      throw PoolError(to_string(op) + ": target ratio " + format_ratio(*cfg.ratio) +
                      " unreachable, coarsening stalled at " + std::to_string(current.num_nodes()) +
                      " supernodes (achieved ratio " + format_ratio(achieved()) + ")");
    }
    composite = composite ? composite->then(res.level.assignment) : res.level.assignment;
    current_x = res.level.output;
    current = std::move(res.graph);
    levels.push_back(std::move(res.level));
  }

  PooledGraph out{current,
                  current_x,
                  composite ? *composite : AssignmentMatrix::identity(n),
                  op,
                  std::move(levels),
                  {},
                  achieved()};
  return out;
}

}  // namespace detail

PooledGraph pool(OperatorId op, const Graph& g, const EmbeddingMatrix& x, const PoolConfig& cfg) {
  validate_config(op, cfg);
  if (x.rows() != g.num_nodes()) {
    throw PoolError("pool: embedding has " + std::to_string(x.rows()) + " rows for a graph with " +
                    std::to_string(g.num_nodes()) + " nodes");
  }
  switch (op) {
    case OperatorId::Dense: return detail::pool_dense(g, x, cfg, false);
    case OperatorId::RandDense: return detail::pool_dense(g, x, cfg, true);
    case OperatorId::Graclus: return detail::pool_graclus(g, x, cfg, false);
    case OperatorId::CmpGraclus: return detail::pool_graclus(g, x, cfg, true);
    case OperatorId::Kmis: return detail::pool_kmis(g, x, cfg);
    case OperatorId::Ecpool: return detail::pool_ecpool(g, x, cfg);
    case OperatorId::Topk:
    case OperatorId::Sagpool:
    case OperatorId::RandSparse: return detail::pool_topk(op, g, x, cfg);
    case OperatorId::Identity: {
      auto s = AssignmentMatrix::identity(g.num_nodes());
      PoolLevel level{s, x, x, {}};
      const bool keep_int = x.mode == FeatureMode::Integer && !(x.values.array() < 0.0).any();
      Graph pooled = g.with_features(x.values, keep_int ? FeatureMode::Integer : FeatureMode::Real);
      return PooledGraph{std::move(pooled), x, std::move(s), op, {std::move(level)}, {}, 1.0};
    }
  }
  throw PoolError("unknown operator");
}

}  // namespace poolex
