#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "poolex/error.hpp"
#include "poolex_cli/commands.hpp"

namespace {

using namespace poolex;
using namespace poolex::cli;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::uint64_t parse_u64(const std::string& text, const std::string& flag) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(flag + ": expected a non-negative integer, got '" + text + "'");
  }
}

/// Raw flag values; converted into a RunConfig after parsing.
struct Flags {
  std::string dataset;
  std::string ops = "dense,rand-dense,graclus,cmp-graclus,kmis,ecpool,topk,sagpool,rand-sparse,identity";
  double ratio = 0.0;
  std::size_t k = 0;
  std::string mode = "exact";
  std::string seeds = "0";
  std::string rounds = "auto";
  std::string readout = "sum";
  std::string format = "table";
  std::string out;
  std::size_t count = 200;
  std::string nodes = "16:64";
  std::size_t difficulty = 1;
  std::size_t layers_before = 2;
  std::size_t layers_after = 1;
  std::size_t graphs = 50;
  bool assert_expressive = false;
  bool timing = false;
};

RunConfig to_run_config(const Flags& f, const CLI::App& sub) {
  RunConfig run;
  if (!f.dataset.empty()) run.dataset = f.dataset;
  for (const auto& name : split(f.ops, ',')) {
    if (!name.empty()) run.ops.push_back(parse_operator(name));
  }
  if (sub.count("--ratio") > 0) run.ratio = f.ratio;
  if (sub.count("--k") > 0) run.k = f.k;
  run.mode = parse_eval_mode(f.mode);
  run.seeds.clear();
  for (const auto& s : split(f.seeds, ',')) run.seeds.push_back(parse_u64(s, "--seeds"));
  if (f.rounds != "auto") run.rounds = parse_u64(f.rounds, "--rounds");
  run.readout = parse_readout(f.readout);
  if (f.format == "table") {
    run.format = OutputFormat::Table;
  } else if (f.format == "json") {
    run.format = OutputFormat::Json;
  } else {
    throw Error("--format: expected table or json, got '" + f.format + "'");
  }
  if (!f.out.empty()) run.out = f.out;
  run.count = f.count;
  const auto range = split(f.nodes, ':');
  if (range.size() != 2) throw Error("--nodes: expected lo:hi, got '" + f.nodes + "'");
  run.nodes = {parse_u64(range[0], "--nodes"), parse_u64(range[1], "--nodes")};
  run.difficulty = f.difficulty;
  run.layers_before = f.layers_before;
  run.layers_after = f.layers_after;
  run.graphs = f.graphs;
  run.assert_expressive = f.assert_expressive;
  run.timing = f.timing;
  return run;
}

void add_common(CLI::App& sub, Flags& f) {
  sub.add_option("--dataset", f.dataset, "JSONL pair dataset (generated pairs when omitted)");
  sub.add_option("--ops", f.ops, "Comma-separated operator names");
  sub.add_option("--ratio", f.ratio, "Pooling ratio K/N");
  sub.add_option("--k", f.k, "Supernode count, or hop radius for kmis");
  sub.add_option("--mode", f.mode, "exact or real");
  sub.add_option("--seeds", f.seeds, "Comma-separated seeds");
  sub.add_option("--rounds", f.rounds, "WL rounds for the exact embedding, or auto");
  sub.add_option("--readout", f.readout, "sum, mean or max");
  sub.add_option("--format", f.format, "table or json");
  sub.add_option("--out", f.out, "Write the report to this file");
  sub.add_option("--count", f.count, "Number of generated pairs");
  sub.add_option("--nodes", f.nodes, "Node range lo:hi of generated graphs");
  sub.add_option("--difficulty", f.difficulty, "Minimum WL divergence round of generated pairs");
  sub.add_option("--layers-before", f.layers_before, "GIN layers before pooling");
  sub.add_option("--layers-after", f.layers_after, "GIN layers after pooling");
  sub.add_option("--graphs", f.graphs, "Sample graphs per seed for check");
  sub.add_flag("--assert-expressive", f.assert_expressive, "Exit 1 if any operator is not expressive");
  sub.add_flag("--timing", f.timing, "Include wall times in JSON reports");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"poolex: expressiveness checks for graph pooling operators"};
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&, std::ostream&, std::ostream&);
  };
  const Entry entries[] = {
      {"check", "Audit the pooling conditions on sampled graphs", cmd_check},
      {"oracle", "Exact-mode distinguishability sweep over graph pairs", cmd_oracle},
      {"pipeline", "MP, pool, MP, readout with random weights in real mode", cmd_pipeline},
      {"stats", "Dataset statistics", cmd_stats},
      {"gen", "Generate WL-distinguishable pairs as JSONL", cmd_gen},
      {"counterexample", "Emit the top-k counterexample pair as JSONL", cmd_counterexample},
  };

  Flags flags;
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(*sub, flags);
    subs.emplace_back(sub, &e);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  for (const auto& [sub, entry] : subs) {
    if (!sub->parsed()) continue;
    try {
      return entry->fn(to_run_config(flags, *sub), std::cout, std::cerr);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitConfig;
    }
  }
  return kExitConfig;
}
