#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "poolex/graph.hpp"

namespace poolex {

/// A JSONL pair dataset together with its header metadata.
struct Dataset {
  FeatureMode feature_mode = FeatureMode::Integer;
  std::size_t feature_dim = 1;
  std::vector<GraphPair> pairs;
};

struct LoadOptions {
  bool allow_self_loops = false;
  /// Re-check every `"wl_distinct": true` claim with 1-WL and fail on the
  /// first record whose claim does not hold.
  bool verify_wl_claims = false;
};

/// Reads the JSON-lines pair format: one `{"meta": ...}` header line, then one
/// pair record per line. Throws ParseError carrying the 1-based line number.
Dataset load_dataset(const std::filesystem::path& path, const LoadOptions& options = {});
Dataset read_dataset(std::istream& in, const LoadOptions& options = {});

/// Writes `pairs` in the same format. All graphs must share one feature mode
/// and feature dimension.
void save_dataset(const std::filesystem::path& path, std::span<const GraphPair> pairs);
void write_dataset(std::ostream& out, std::span<const GraphPair> pairs);

/// Means are taken over every graph (both members of each pair).
DatasetStats dataset_stats(std::span<const GraphPair> pairs);

}  // namespace poolex
