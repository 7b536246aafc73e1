#include "poolex_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "poolex/dataset.hpp"
#include "poolex/digest.hpp"
#include "poolex/error.hpp"
#include "poolex/rng.hpp"
#include "poolex/wl.hpp"

namespace poolex::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kSchemaVersion = 1;
constexpr std::size_t kMaxListedErrors = 5;
constexpr std::size_t kRealFeatureDim = 8;
constexpr std::size_t kHiddenWidth = 64;
constexpr double kPipelineWeightScale = 0.25;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string size_label(OperatorId op, const PoolConfig& cfg) {
  if (operator_info(op).knob == SizeKnob::None) return "-";
  if (cfg.k) return "k=" + std::to_string(*cfg.k);
  return fixed(*cfg.ratio, 2);
}

std::string mark(bool ok) { return ok ? "pass" : "FAIL"; }

/// Per-operator aggregate shared by check, oracle and pipeline.
struct OpSummary {
  OperatorId op = OperatorId::Identity;
  std::string size;
  bool cond2 = true;
  bool cond3 = true;
  bool r_weighted = false;
  double cond2_worst = 0.0;
  double cond3_worst = 0.0;
  std::size_t samples = 0;
  std::size_t distinct = 0;
  std::size_t pre_distinct = 0;
  std::vector<std::size_t> failing;
  std::vector<std::string> errors;
  std::vector<double> seconds;
  double achieved_sum = 0.0;
  std::size_t achieved_count = 0;

  void achieved(std::size_t k, std::size_t n) {
    achieved_sum += static_cast<double>(k) / static_cast<double>(n);
    ++achieved_count;
  }
  double mean_achieved() const {
    return achieved_count == 0 ? 0.0 : achieved_sum / static_cast<double>(achieved_count);
  }

  void absorb(const ConditionReport& r) {
    cond2 = cond2 && r.cond2.pass;
    cond3 = cond3 && r.cond3.pass;
    r_weighted = r_weighted || r.cond3.r_weighted;
    cond2_worst = std::max(cond2_worst, r.cond2.worst_deviation);
    cond3_worst = std::max(cond3_worst, r.cond3.max_deviation);
  }

  void error(std::size_t id, const std::string& what) {
    failing.push_back(id);
    if (errors.size() < kMaxListedErrors) errors.push_back("pair " + std::to_string(id) + ": " + what);
  }

  bool conditions() const { return cond2 && cond3 && samples > 0; }
  double rate() const { return samples == 0 ? 0.0 : static_cast<double>(distinct) / static_cast<double>(samples); }
  double pre_rate() const {
    return samples == 0 ? 0.0 : static_cast<double>(pre_distinct) / static_cast<double>(samples);
  }
};

Json condition_json(const OpSummary& s) {
  Json j;
  j["cond2"] = s.cond2;
  j["cond3"] = s.cond3;
  j["cond3_r_weighted"] = s.r_weighted;
  j["cond2_worst_deviation"] = s.cond2_worst;
  j["cond3_max_deviation"] = s.cond3_worst;
  return j;
}

Json config_json(const RunConfig& run, const std::string& command) {
  Json j;
  j["command"] = command;
  if (run.dataset) {
    j["dataset"] = run.dataset->string();
  } else {
    j["generator"] = {{"count", run.count},
                      {"nodes", {run.nodes.lower, run.nodes.upper}},
                      {"difficulty", run.difficulty}};
  }
  Json ops = Json::array();
  for (auto op : run.ops) ops.push_back(to_string(op));
  j["ops"] = ops;
  j["ratio"] = run.ratio ? Json(*run.ratio) : Json(nullptr);
  j["k"] = run.k ? Json(*run.k) : Json(nullptr);
  j["mode"] = to_string(run.mode);
  j["seeds"] = run.seeds;
  j["rounds"] = run.rounds ? Json(*run.rounds) : Json("auto");
  return j;
}

/// Writes to run.out when set, else to `out`. Returns false on I/O failure.
bool emit(const RunConfig& run, const std::string& text, std::ostream& out, std::ostream& err) {
  if (!run.out) {
    out << text;
    return true;
  }
  std::ofstream file(*run.out);
  if (!file || !(file << text)) {
    err << "error: cannot write '" << run.out->string() << "'\n";
    return false;
  }
  return true;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void table_row(std::ostream& s, const std::vector<std::pair<std::string, int>>& cells) {
  for (const auto& [text, width] : cells) s << std::left << std::setw(width) << text;
  s << "\n";
}

EmbeddingMatrix real_features(std::size_t n, Rng& rng) {
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(kRealFeatureDim));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = rng.normal();
  }
  return {std::move(x), FeatureMode::Real};
}

GinLayer pipeline_layer(std::size_t in, std::uint64_t seed) {
  MlpSpec spec{{in, kHiddenWidth, kHiddenWidth, kHiddenWidth}, Activation::Elu, seed, kPipelineWeightScale};
  return GinLayer(0.0, spec);
}

bool readouts_differ(const RowVector& a, const RowVector& b) {
  const DigestMode q = DigestMode::quantized();
  return !(multiset_digest(Matrix(a), q) == multiset_digest(Matrix(b), q));
}

}  // namespace

PoolConfig pool_config_for(OperatorId op, const RunConfig& run, std::uint64_t seed) {
  PoolConfig cfg;
  cfg.seed = seed;
  switch (operator_info(op).knob) {
    case SizeKnob::None:
      break;
    case SizeKnob::Ratio:
      cfg.ratio = run.ratio.value_or(kDefaultRatio);
      break;
    case SizeKnob::K:
      cfg.k = run.k.value_or(kDefaultKmisRadius);
      break;
    case SizeKnob::RatioOrK:
      if (run.k && !run.ratio) {
        cfg.k = run.k;
      } else {
        cfg.ratio = run.ratio.value_or(kDefaultRatio);
      }
      break;
  }
  return cfg;
}

void validate_run(const RunConfig& run) {
  if (run.ops.empty()) throw Error("at least one operator is required");
  if (run.seeds.empty()) throw Error("at least one seed is required");
  if (run.layers_before == 0) throw Error("--layers-before must be >= 1");
  if (run.ratio && !(*run.ratio > 0.0 && *run.ratio <= 1.0)) throw Error("--ratio must lie in (0, 1]");
  if (run.k && *run.k == 0) throw Error("--k must be >= 1");
  if (run.count == 0) throw Error("--count must be >= 1");
}

std::vector<GraphPair> load_pairs(const RunConfig& run) {
  if (run.dataset) return load_dataset(*run.dataset).pairs;
  return generate_wl_pairs(run.count, run.nodes, run.seeds.front(), run.difficulty);
}

int cmd_check(const RunConfig& run, std::ostream& out, std::ostream& err) {
  validate_run(run);
  std::vector<OpSummary> summaries;
  for (OperatorId op : run.ops) {
    OpSummary s;
    s.op = op;
    s.size = size_label(op, pool_config_for(op, run, run.seeds.front()));
    for (std::uint64_t seed : run.seeds) {
      const PoolConfig cfg = pool_config_for(op, run, seed);
      for (std::size_t i = 0; i < run.graphs; ++i) {
        Rng rng(derive_seed(seed, i));
        const std::size_t n = run.nodes.lower + rng.below(run.nodes.upper - run.nodes.lower + 1);
        const Graph g = random_connected_graph(n, rng);
        const EmbeddingMatrix x =
            run.mode == EvalMode::Exact ? exact_color_embedding(g, g).first : real_features(n, rng);
        try {
          const auto start = Clock::now();
          const PooledGraph pooled = pool(op, g, x, cfg);
          s.absorb(audit_pooling(x, pooled));
          s.achieved(pooled.num_supernodes(), n);
          s.seconds.push_back(seconds_since(start));
          ++s.samples;
        } catch (const Error& e) {
          s.error(i, e.what());
        }
      }
    }
    summaries.push_back(std::move(s));
  }

  bool violated = false;
  for (const auto& s : summaries) violated = violated || !s.conditions() || !s.failing.empty();

  std::string text;
  if (run.format == OutputFormat::Json) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["config"] = config_json(run, "check");
    Json ops = Json::array();
    for (const auto& s : summaries) {
      Json o;
      o["operator"] = to_string(s.op);
      o["size"] = s.size;
      o["mean_achieved_ratio"] = s.mean_achieved();
      o["graphs"] = s.samples;
      o["conditions"] = condition_json(s);
      o["expressive"] = s.conditions() && s.failing.empty();
      o["errors"] = s.errors;
      if (run.timing) o["median_seconds"] = median(s.seconds);
      ops.push_back(o);
    }
    j["operators"] = ops;
    text = dump(j);
  } else {
    std::ostringstream t;
    table_row(t, {{"operator", 13}, {"size", 7}, {"K/N", 7}, {"graphs", 8}, {"cond2", 7}, {"cond3", 10}, {"expressive", 12},
                  {"s/graph", 10}});
    for (const auto& s : summaries) {
      const std::string c3 = mark(s.cond3) + (s.r_weighted ? " (r)" : "");
      table_row(t, {{to_string(s.op), 13}, {s.size, 7}, {fixed(s.mean_achieved(), 3), 7}, {std::to_string(s.samples), 8}, {mark(s.cond2), 7},
                    {c3, 10}, {s.conditions() && s.failing.empty() ? "yes" : "no", 12},
                    {fixed(median(s.seconds), 6), 10}});
      for (const auto& e : s.errors) t << "  error " << e << "\n";
    }
    text = t.str();
  }
  if (!emit(run, text, out, err)) return kExitConfig;
  return run.assert_expressive && violated ? kExitAssertion : kExitOk;
}

int cmd_oracle(const RunConfig& run, std::ostream& out, std::ostream& err) {
  validate_run(run);
  if (run.mode != EvalMode::Exact) {
    err << "error: oracle requires --mode exact; use pipeline for real-valued runs\n";
    return kExitConfig;
  }
  const auto pairs = load_pairs(run);
  std::vector<std::size_t> excluded;
  std::vector<std::size_t> included;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    (wl_distinguishable(pairs[i].left, pairs[i].right) ? included : excluded).push_back(i);
  }

  const OracleOptions options{run.rounds};
  std::vector<OpSummary> summaries;
  for (OperatorId op : run.ops) {
    OpSummary s;
    s.op = op;
    s.size = size_label(op, pool_config_for(op, run, run.seeds.front()));
    for (std::uint64_t seed : run.seeds) {
      const PoolConfig cfg = pool_config_for(op, run, seed);
      for (std::size_t id : included) {
        ++s.samples;
        try {
          const auto start = Clock::now();
          const auto v = theorem1_oracle(pairs[id], op, cfg, EvalMode::Exact, options, id);
          s.seconds.push_back(seconds_since(start));
          s.absorb(v.conditions_left);
          s.achieved(v.supernodes_left, pairs[id].left.num_nodes());
          s.achieved(v.supernodes_right, pairs[id].right.num_nodes());
          s.absorb(v.conditions_right);
          if (v.pre_pool_distinct) ++s.pre_distinct;
          if (v.post_pool_distinct) {
            ++s.distinct;
          } else {
            s.failing.push_back(id);
          }
        } catch (const Error& e) {
          s.error(id, e.what());
        }
      }
    }
    summaries.push_back(std::move(s));
  }

  auto expressive = [](const OpSummary& s) { return s.conditions() && s.samples > 0 && s.distinct == s.samples; };
  bool violated = false;
  for (const auto& s : summaries) violated = violated || !expressive(s);

  std::string text;
  if (run.format == OutputFormat::Json) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["config"] = config_json(run, "oracle");
    j["pairs"] = pairs.size();
    j["excluded_wl_equivalent"] = excluded;
    Json ops = Json::array();
    for (const auto& s : summaries) {
      Json o;
      o["operator"] = to_string(s.op);
      o["size"] = s.size;
      o["mean_achieved_ratio"] = s.mean_achieved();
      o["evaluated"] = s.samples;
      o["pre_pool_rate"] = s.pre_rate();
      o["rate"] = s.rate();
      o["conditions"] = condition_json(s);
      o["expressive"] = expressive(s);
      o["failing_pairs"] = s.failing;
      o["errors"] = s.errors;
      if (run.timing) o["median_seconds_per_pair"] = median(s.seconds);
      ops.push_back(o);
    }
    j["operators"] = ops;
    text = dump(j);
  } else {
    std::ostringstream t;
    t << "pairs: " << pairs.size() << " (" << excluded.size() << " WL-equivalent excluded)\n";
    table_row(t, {{"operator", 13}, {"size", 7}, {"K/N", 7}, {"rate", 7}, {"pre", 7}, {"cond2", 7}, {"cond3", 10},
                  {"expressive", 12}, {"s/pair", 10}});
    for (const auto& s : summaries) {
      const std::string c3 = mark(s.cond3) + (s.r_weighted ? " (r)" : "");
      table_row(t, {{to_string(s.op), 13}, {s.size, 7}, {fixed(s.mean_achieved(), 3), 7}, {fixed(s.rate(), 2), 7}, {fixed(s.pre_rate(), 2), 7},
                    {mark(s.cond2), 7}, {c3, 10}, {expressive(s) ? "yes" : "no", 12},
                    {fixed(median(s.seconds), 6), 10}});
      if (!s.failing.empty()) {
        t << "  failing pairs:";
        for (std::size_t i = 0; i < std::min<std::size_t>(s.failing.size(), 20); ++i) t << " " << s.failing[i];
        if (s.failing.size() > 20) t << " ... (" << s.failing.size() << " total)";
        t << "\n";
      }
      for (const auto& e : s.errors) t << "  error " << e << "\n";
    }
    text = t.str();
  }
  if (!emit(run, text, out, err)) return kExitConfig;
  return run.assert_expressive && violated ? kExitAssertion : kExitOk;
}

int cmd_pipeline(const RunConfig& run, std::ostream& out, std::ostream& err) {
  validate_run(run);
  const auto pairs = load_pairs(run);

  auto mp = [](const Graph& g, EmbeddingMatrix x, std::size_t layers, std::uint64_t seed, std::uint64_t base) {
    for (std::size_t l = 0; l < layers; ++l) {
      x = gin_forward(g, x, pipeline_layer(x.cols(), derive_seed(seed, base + l)));
    }
    return x;
  };

  std::vector<OpSummary> summaries;
  for (OperatorId op : run.ops) {
    OpSummary s;
    s.op = op;
    s.size = size_label(op, pool_config_for(op, run, run.seeds.front()));
    for (std::uint64_t seed : run.seeds) {
      const PoolConfig cfg = pool_config_for(op, run, seed);
      for (std::size_t id = 0; id < pairs.size(); ++id) {
        ++s.samples;
        try {
          const auto start = Clock::now();
          const Graph* sides[2] = {&pairs[id].left, &pairs[id].right};
          EmbeddingMatrix h[2];
          RowVector pre[2];
          RowVector post[2];
          for (int side = 0; side < 2; ++side) {
            const Graph& g = *sides[side];
            h[side] = mp(g, EmbeddingMatrix(g.features(), FeatureMode::Real), run.layers_before, seed, 100);
            pre[side] = global_readout(h[side], run.readout);
          }
          if (readouts_differ(pre[0], pre[1])) ++s.pre_distinct;
          for (int side = 0; side < 2; ++side) {
            const PooledGraph pooled = pool(op, *sides[side], h[side], cfg);
            s.achieved(pooled.num_supernodes(), sides[side]->num_nodes());
            const EmbeddingMatrix h2 = mp(pooled.graph, pooled.features, run.layers_after, seed, 200);
            post[side] = global_readout(h2, run.readout);
          }
          s.seconds.push_back(seconds_since(start));
          if (readouts_differ(post[0], post[1])) {
            ++s.distinct;
          } else {
            s.failing.push_back(id);
          }
        } catch (const NumericError& e) {
          throw Error("pipeline aborted at operator " + to_string(op) + ", pair " + std::to_string(id) + ": " +
                      e.what());
        } catch (const Error& e) {
          s.error(id, e.what());
        }
      }
    }
    summaries.push_back(std::move(s));
  }

  std::string text;
  if (run.format == OutputFormat::Json) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["config"] = config_json(run, "pipeline");
    j["config"]["mode"] = "real";
    j["config"]["readout"] = to_string(run.readout);
    j["config"]["layers_before"] = run.layers_before;
    j["config"]["layers_after"] = run.layers_after;
    j["pairs"] = pairs.size();
    Json ops = Json::array();
    for (const auto& s : summaries) {
      Json o;
      o["operator"] = to_string(s.op);
      o["size"] = s.size;
      o["mean_achieved_ratio"] = s.mean_achieved();
      o["evaluated"] = s.samples;
      o["pre_pool_rate"] = s.pre_rate();
      o["rate"] = s.rate();
      o["failing_pairs"] = s.failing;
      o["errors"] = s.errors;
      if (run.timing) o["median_seconds_per_pair"] = median(s.seconds);
      ops.push_back(o);
    }
    j["operators"] = ops;
    text = dump(j);
  } else {
    std::ostringstream t;
    t << "pairs: " << pairs.size() << ", seeds: " << run.seeds.size() << ", readout: " << to_string(run.readout)
      << "\n";
    table_row(t, {{"operator", 13}, {"size", 7}, {"K/N", 7}, {"pre", 7}, {"rate", 7}, {"s/pair", 10}});
    for (const auto& s : summaries) {
      table_row(t, {{to_string(s.op), 13}, {s.size, 7}, {fixed(s.mean_achieved(), 3), 7}, {fixed(s.pre_rate(), 2), 7}, {fixed(s.rate(), 2), 7},
                    {fixed(median(s.seconds), 6), 10}});
      for (const auto& e : s.errors) t << "  error " << e << "\n";
    }
    text = t.str();
  }
  return emit(run, text, out, err) ? kExitOk : kExitConfig;
}

int cmd_stats(const RunConfig& run, std::ostream& out, std::ostream& err) {
  const auto pairs = load_pairs(run);
  const DatasetStats st = dataset_stats(pairs);
  std::string text;
  if (run.format == OutputFormat::Json) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["graphs"] = st.num_graphs;
    j["pairs"] = st.num_pairs;
    j["mean_nodes"] = st.mean_nodes;
    j["mean_edges"] = st.mean_edges;
    j["feature_dim"] = st.feature_dim;
    text = dump(j);
  } else {
    std::ostringstream t;
    t << "graphs       " << st.num_graphs << "\n"
      << "pairs        " << st.num_pairs << "\n"
      << "mean nodes   " << fixed(st.mean_nodes, 2) << "\n"
      << "mean edges   " << fixed(st.mean_edges, 2) << "\n"
      << "feature dim  " << st.feature_dim << "\n";
    text = t.str();
  }
  return emit(run, text, out, err) ? kExitOk : kExitConfig;
}

int cmd_gen(const RunConfig& run, std::ostream& out, std::ostream& err) {
  if (run.seeds.empty()) throw Error("at least one seed is required");
  const auto pairs = generate_wl_pairs(run.count, run.nodes, run.seeds.front(), run.difficulty);
  std::ostringstream s;
  write_dataset(s, pairs);
  return emit(run, s.str(), out, err) ? kExitOk : kExitConfig;
}

int cmd_counterexample(const RunConfig& run, std::ostream& out, std::ostream& err) {
  const GraphPair pair = build_topk_counterexample(run.seeds.empty() ? 0 : run.seeds.front());
  std::ostringstream s;
  write_dataset(s, std::span<const GraphPair>(&pair, 1));
  return emit(run, s.str(), out, err) ? kExitOk : kExitConfig;
}

}  // namespace poolex::cli
