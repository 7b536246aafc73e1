#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "poolex/expressiveness.hpp"
#include "poolex/generator.hpp"
#include "poolex/mp.hpp"
#include "poolex/pooling.hpp"

namespace poolex::cli {

enum class OutputFormat { Table, Json };

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitConfig = 2;

struct RunConfig {
  /// Pairs are read from here when set, otherwise generated.
  std::optional<std::filesystem::path> dataset;
  std::size_t count = 200;
  NodeRange nodes{16, 64};
  std::size_t difficulty = 1;

  std::vector<OperatorId> ops;
  std::optional<double> ratio;
  std::optional<std::size_t> k;
  EvalMode mode = EvalMode::Exact;
  std::vector<std::uint64_t> seeds{0};
  std::optional<std::size_t> rounds;
  Readout readout = Readout::Sum;
  OutputFormat format = OutputFormat::Table;
  std::optional<std::filesystem::path> out;

  std::size_t layers_before = 2;
  std::size_t layers_after = 1;
  /// Sample graphs per operator for `check`.
  std::size_t graphs = 50;
  bool assert_expressive = false;
  bool timing = false;
};

inline constexpr double kDefaultRatio = 0.1;
inline constexpr std::size_t kDefaultKmisRadius = 3;

/// Pooling config for `op` derived from the run: ratio operators get
/// ratio (default kDefaultRatio), kmis gets k (default kDefaultKmisRadius),
/// direct-size operators get k only when k is given without a ratio.
PoolConfig pool_config_for(OperatorId op, const RunConfig& run, std::uint64_t seed);

/// Throws Error when the run violates its own invariants (no operators, no
/// seeds, layers_before == 0, ratio outside (0, 1]).
void validate_run(const RunConfig& run);

/// Reads run.dataset or generates run.count pairs from run.seeds.front().
std::vector<GraphPair> load_pairs(const RunConfig& run);

int cmd_check(const RunConfig& run, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& run, std::ostream& out, std::ostream& err);
int cmd_pipeline(const RunConfig& run, std::ostream& out, std::ostream& err);
int cmd_stats(const RunConfig& run, std::ostream& out, std::ostream& err);
int cmd_gen(const RunConfig& run, std::ostream& out, std::ostream& err);
int cmd_counterexample(const RunConfig& run, std::ostream& out, std::ostream& err);

}  // namespace poolex::cli
