#include "poolex/dataset.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "poolex/error.hpp"
#include "poolex/wl.hpp"

namespace poolex {

using nlohmann::json;

namespace {

Graph parse_graph(const json& j, FeatureMode mode, std::size_t feature_dim,
                  const LoadOptions& options) {
  if (!j.is_object()) throw GraphError("graph record is not an object");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw GraphError("field 'n' must be a positive integer");
  }
  const auto n = j["n"].get<std::size_t>();

  std::vector<Edge> edges;
  if (!j.contains("edges") || !j["edges"].is_array()) throw GraphError("field 'edges' must be an array");
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw GraphError("field 'edges' entries must be [u, v] integer pairs");
    }
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }

  if (!j.contains("x") || !j["x"].is_array()) throw GraphError("field 'x' must be an array of rows");
  const auto& xs = j["x"];
  if (xs.size() != n) {
    throw GraphError("field 'x' has " + std::to_string(xs.size()) + " rows, expected n = " +
                     std::to_string(n));
  }
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(feature_dim));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = xs[i];
    if (!row.is_array() || row.size() != feature_dim) {
      throw GraphError("field 'x' row " + std::to_string(i) + " must have feature_dim = " +
                       std::to_string(feature_dim) + " entries");
    }
    for (std::size_t c = 0; c < feature_dim; ++c) {
      if (!row[c].is_number()) throw GraphError("field 'x' entries must be numbers");
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = row[c].get<double>();
    }
  }

  std::optional<std::vector<int>> labels;
  if (j.contains("y") && !j["y"].is_null()) {
    if (!j["y"].is_array()) throw GraphError("field 'y' must be an array of integers");
    labels.emplace();
    for (const auto& v : j["y"]) {
      if (!v.is_number_integer()) throw GraphError("field 'y' must be an array of integers");
      labels->push_back(v.get<int>());
    }
  }
  GraphOptions graph_options;
  graph_options.allow_self_loops = options.allow_self_loops;
  return Graph(n, std::move(edges), std::move(x), mode, std::move(labels), {}, graph_options);
}

json graph_to_json(const Graph& g) {
  json j;
  j["n"] = g.num_nodes();
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  json xs = json::array();
  const auto& x = g.features();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      if (g.feature_mode() == FeatureMode::Integer) {
        row.push_back(static_cast<long long>(x(i, c)));
      } else {
        row.push_back(x(i, c));
      }
    }
    xs.push_back(std::move(row));
  }
  j["x"] = std::move(xs);
  if (g.labels()) j["y"] = *g.labels();
  return j;
}

}  // namespace

Dataset read_dataset(std::istream& in, const LoadOptions& options) {
  Dataset ds;
  bool have_meta = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!have_meta) {
      if (!j.is_object() || !j.contains("meta")) {
        throw ParseError(line_no, "expected {\"meta\": {...}} header as the first record");
      }
      const auto& meta = j["meta"];
      try {
        ds.feature_mode = parse_feature_mode(meta.at("feature_mode").get<std::string>());
        const auto dim = meta.at("feature_dim").get<long long>();
        if (dim < 1) throw Error("feature_dim must be >= 1");
        ds.feature_dim = static_cast<std::size_t>(dim);
      } catch (const json::exception& e) {
        throw ParseError(line_no, std::string("malformed meta header: ") + e.what());
      } catch (const Error& e) {
        throw ParseError(line_no, std::string("malformed meta header: ") + e.what());
      }
      have_meta = true;
      continue;
    }
    if (j.is_object() && j.contains("meta")) {
      throw ParseError(line_no, "feature mode may only be declared once per dataset");
    }
    if (!j.is_object()) throw ParseError(line_no, "pair record is not a JSON object");

    auto graph_at = [&](const char* side) {
      if (!j.contains(side)) throw ParseError(line_no, std::string("missing field '") + side + "'");
      try {
        return parse_graph(j[side], ds.feature_mode, ds.feature_dim, options);
      } catch (const GraphError& e) {
        throw ParseError(line_no, std::string(side) + " graph: " + e.what());
      } catch (const json::exception& e) {
        throw ParseError(line_no, std::string(side) + " graph: " + e.what());
      }
    };
    Graph left = graph_at("left");
    Graph right = graph_at("right");
    auto int_field = [&](const char* name, int fallback) {
      if (!j.contains(name)) return fallback;
      if (!j[name].is_number_integer()) {
        throw ParseError(line_no, std::string("field '") + name + "' must be an integer");
      }
      return j[name].get<int>();
    };
    const int label_left = int_field("label_left", 0);
    const int label_right = int_field("label_right", 1);
    bool claimed = true;
    if (j.contains("wl_distinct")) {
      if (!j["wl_distinct"].is_boolean()) throw ParseError(line_no, "field 'wl_distinct' must be a boolean");
      claimed = j["wl_distinct"].get<bool>();
    }
    if (options.verify_wl_claims && claimed && !wl_distinguishable(left, right)) {
      throw ParseError(line_no, "pair claims wl_distinct = true but 1-WL does not separate it");
    }
    ds.pairs.push_back(GraphPair{std::move(left), std::move(right), label_left, label_right, claimed});
  }
  if (!have_meta) throw ParseError(0, "dataset is empty (no meta header)");
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset '" + path.string() + "'");
  return read_dataset(in, options);
}

void write_dataset(std::ostream& out, std::span<const GraphPair> pairs) {
  FeatureMode mode = FeatureMode::Integer;
  std::size_t dim = 1;
  if (!pairs.empty()) {
    mode = pairs.front().left.feature_mode();
    dim = pairs.front().left.feature_dim();
  }
  for (const auto& p : pairs) {
    for (const Graph* g : {&p.left, &p.right}) {
      if (g->feature_mode() != mode) throw Error("cannot mix int and real feature modes in one dataset");
      if (g->feature_dim() != dim) throw Error("all graphs in a dataset must share feature_dim");
      if (g->weighted()) throw Error("edge weights are not part of the dataset format");
    }
  }
  json meta;
  meta["meta"] = {{"feature_mode", to_string(mode)}, {"feature_dim", dim}};
  out << meta.dump() << '\n';
  for (const auto& p : pairs) {
    json rec;
    rec["left"] = graph_to_json(p.left);
    rec["right"] = graph_to_json(p.right);
    rec["label_left"] = p.label_left;
    rec["label_right"] = p.label_right;
    rec["wl_distinct"] = p.claimed_wl_distinguishable;
    out << rec.dump() << '\n';
  }
}

void save_dataset(const std::filesystem::path& path, std::span<const GraphPair> pairs) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  write_dataset(out, pairs);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

DatasetStats dataset_stats(std::span<const GraphPair> pairs) {
  if (pairs.empty()) throw Error("empty dataset: statistics need at least one pair");
  DatasetStats s;
  s.num_pairs = pairs.size();
  s.num_graphs = 2 * pairs.size();
  double nodes = 0.0;
  double edges = 0.0;
  for (const auto& p : pairs) {
    nodes += static_cast<double>(p.left.num_nodes() + p.right.num_nodes());
    edges += static_cast<double>(p.left.num_edges() + p.right.num_edges());
  }
  s.mean_nodes = nodes / static_cast<double>(s.num_graphs);
  s.mean_edges = edges / static_cast<double>(s.num_graphs);
  s.feature_dim = pairs.front().left.feature_dim();
  return s;
}

}  // namespace poolex
