#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "poolex/assignment.hpp"
#include "poolex/graph.hpp"
#include "poolex/mp.hpp"
#include "poolex/pooling.hpp"

namespace poolex {

/// Default tolerance for condition checks on real-valued inputs.
inline constexpr double kRealTolerance = 1e-9;

/// Constant row sums of S.
struct Condition2Result {
  bool pass = false;
  /// Median row sum.
  double lambda = 0.0;
  double worst_deviation = 0.0;
  std::vector<std::size_t> violating_rows;
  std::vector<double> violating_sums;
};

/// Pooled features equal S^T X (or r * S^T X).
struct Condition3Result {
  bool pass = false;
  double max_deviation = 0.0;
  /// Checked against the r-weighted form (edge contraction).
  bool r_weighted = false;
};

struct ConditionReport {
  OperatorId op = OperatorId::Identity;
  double tolerance = 0.0;
  Condition2Result cond2;
  Condition3Result cond3;

  bool passes() const noexcept { return cond2.pass && cond3.pass; }
};

/// Throws Error on an S without rows.
Condition2Result check_condition2(const AssignmentMatrix& s, double tol);

/// Throws Error when the shapes of x, s and x_pooled (and r) disagree.
Condition3Result check_condition3(const EmbeddingMatrix& x, const AssignmentMatrix& s,
                                  const EmbeddingMatrix& x_pooled,
                                  std::optional<std::span<const double>> r, double tol);

/// Audits a pool() result against its input. Condition 2 is checked on the
/// composite S, condition 3 level by level. Without `tol`, integer inputs with
/// a binary S are compared exactly and everything else at kRealTolerance.
ConditionReport audit_pooling(const EmbeddingMatrix& x, const PooledGraph& pooled,
                              std::optional<double> tol = std::nullopt);

enum class EvalMode { Exact, Real };

std::string to_string(EvalMode m);
EvalMode parse_eval_mode(const std::string& text);

struct OracleOptions {
  /// WL rounds used for the exact embedding; stable coloring when unset.
  std::optional<std::size_t> rounds;
};

struct DistinguishabilityVerdict {
  std::size_t pair_id = 0;
  /// Column sums of the exact embeddings differ.
  bool pre_pool_distinct = false;
  /// Pooled feature multisets differ (or the supernode counts do).
  bool post_pool_distinct = false;
  OperatorId op = OperatorId::Identity;
  EvalMode mode = EvalMode::Exact;
  std::size_t supernodes_left = 0;
  std::size_t supernodes_right = 0;
  /// Condition audits of the two pooling runs.
  ConditionReport conditions_left;
  ConditionReport conditions_right;
};

/// Embeds both graphs with one-hot joint WL colors, pools each side with `op`
/// and compares pooled feature multisets by digest.
///
/// Throws OracleError for EvalMode::Real and for WL-equivalent pairs.
DistinguishabilityVerdict theorem1_oracle(const GraphPair& pair, OperatorId op, const PoolConfig& cfg,
                                          EvalMode mode, const OracleOptions& options = {},
                                          std::size_t pair_id = 0);

/// A WL-distinguishable pair of 4-node graphs with strictly decreasing integer
/// scalar features on which top-k selection with K = 2 yields equal pooled
/// feature multisets for both signs of the projector. The seed perturbs the
/// feature magnitudes only.
GraphPair build_topk_counterexample(std::uint64_t seed = 0);

}  // namespace poolex
