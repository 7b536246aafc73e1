#include "poolex/expressiveness.hpp"

#include <algorithm>
#include <cmath>

#include "poolex/digest.hpp"
#include "poolex/error.hpp"
#include "poolex/wl.hpp"

namespace poolex {

namespace {

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

bool all_integer(const Matrix& m) {
  return (m.array() == m.array().round()).all();
}

}  // namespace

Condition2Result check_condition2(const AssignmentMatrix& s, double tol) {
  if (s.rows() == 0) throw Error("check_condition2: S has no rows");
  const Vector sums = s.row_sums();
  std::vector<double> values(sums.data(), sums.data() + sums.size());

  Condition2Result out;
  out.lambda = median(values);
  const bool lambda_positive = out.lambda > tol;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double dev = std::abs(values[i] - out.lambda);
    out.worst_deviation = std::max(out.worst_deviation, dev);
    // With no usable lambda, the rows that can never reach one are reported.
    const bool bad = lambda_positive ? dev > tol : values[i] <= tol;
    if (bad) {
      out.violating_rows.push_back(i);
      out.violating_sums.push_back(values[i]);
    }
  }
  out.pass = lambda_positive && out.violating_rows.empty();
  return out;
}

Condition3Result check_condition3(const EmbeddingMatrix& x, const AssignmentMatrix& s,
                                  const EmbeddingMatrix& x_pooled,
                                  std::optional<std::span<const double>> r, double tol) {
  if (s.rows() != x.rows() || s.cols() != x_pooled.rows() || x.cols() != x_pooled.cols()) {
    throw Error("check_condition3: shape mismatch (X " + std::to_string(x.rows()) + "x" +
                std::to_string(x.cols()) + ", S " + std::to_string(s.rows()) + "x" +
                std::to_string(s.cols()) + ", X_P " + std::to_string(x_pooled.rows()) + "x" +
                std::to_string(x_pooled.cols()) + ")");
  }
  Matrix expected = s.transpose_times(x.values);
  Condition3Result out;
  if (r) {
    if (r->size() != s.cols()) throw Error("check_condition3: r has the wrong length");
    for (std::size_t j = 0; j < r->size(); ++j) expected.row(static_cast<Eigen::Index>(j)) *= (*r)[j];
    out.r_weighted = true;
  }
  out.max_deviation = expected.size() == 0 ? 0.0 : (expected - x_pooled.values).cwiseAbs().maxCoeff();
  out.pass = out.max_deviation <= tol;
  return out;
}

ConditionReport audit_pooling(const EmbeddingMatrix& x, const PooledGraph& pooled, std::optional<double> tol) {
  ConditionReport report;
  report.op = pooled.op;

  const bool binary = pooled.assignment.is_binary();
  const bool exact = binary && x.mode == FeatureMode::Integer && all_integer(x.values);
  report.tolerance = tol ? *tol : (exact ? 0.0 : kRealTolerance);
  report.cond2 = check_condition2(pooled.assignment, binary && !tol ? 0.0 : report.tolerance);

  report.cond3.pass = true;
  for (const auto& level : pooled.levels) {
    std::optional<std::span<const double>> r;
    if (!level.r.empty()) r = std::span<const double>(level.r);
    const auto res = check_condition3(level.input, level.assignment, level.output, r, report.tolerance);
    report.cond3.pass = report.cond3.pass && res.pass;
    report.cond3.max_deviation = std::max(report.cond3.max_deviation, res.max_deviation);
    report.cond3.r_weighted = report.cond3.r_weighted || res.r_weighted;
  }
  return report;
}

std::string to_string(EvalMode m) { return m == EvalMode::Exact ? "exact" : "real"; }

EvalMode parse_eval_mode(const std::string& text) {
  if (text == "exact") return EvalMode::Exact;
  if (text == "real") return EvalMode::Real;
  throw Error("unknown mode '" + text + "' (expected exact or real)");
}

DistinguishabilityVerdict theorem1_oracle(const GraphPair& pair, OperatorId op, const PoolConfig& cfg,
                                          EvalMode mode, const OracleOptions& options, std::size_t pair_id) {
  if (mode != EvalMode::Exact) {
    throw OracleError("oracle requires exact mode; real-valued runs go through the pipeline");
  }
  if (!wl_distinguishable(pair.left, pair.right)) {
    throw OracleError("pair " + std::to_string(pair_id) + " is WL-equivalent; condition 1 cannot hold");
  }

  DistinguishabilityVerdict v;
  v.pair_id = pair_id;
  v.op = op;
  v.mode = mode;

  const auto [x1, x2] = exact_color_embedding(pair.left, pair.right, options.rounds);
  v.pre_pool_distinct = x1.values.colwise().sum() != x2.values.colwise().sum();

  const PooledGraph p1 = pool(op, pair.left, x1, cfg);
  const PooledGraph p2 = pool(op, pair.right, x2, cfg);
  v.supernodes_left = p1.num_supernodes();
  v.supernodes_right = p2.num_supernodes();
  v.conditions_left = audit_pooling(x1, p1);
  v.conditions_right = audit_pooling(x2, p2);
  if (v.supernodes_left != v.supernodes_right) {
    v.post_pool_distinct = true;
    return v;
  }
  const bool integral = p1.features.mode == FeatureMode::Integer && p2.features.mode == FeatureMode::Integer;
  const DigestMode dm = integral ? DigestMode::exact() : DigestMode::quantized();
  v.post_pool_distinct = !(multiset_digest(p1.features.values, dm) == multiset_digest(p2.features.values, dm));
  return v;
}

}  // namespace poolex
