#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "poolex/digest.hpp"
#include "poolex/error.hpp"
#include "poolex/expressiveness.hpp"
#include "poolex/generator.hpp"
#include "poolex/wl.hpp"

namespace poolex {
namespace {

using test::column;

TEST(Condition2, IdentityPasses) {
  const auto r = check_condition2(AssignmentMatrix::identity(4), 0.0);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.lambda, 1.0);
}

TEST(Condition2, ScaledStochasticPasses) {
  const Matrix s = 2.0 * (Matrix(3, 2) << 0.5, 0.5, 0.25, 0.75, 1.0, 0.0).finished();
  const auto r = check_condition2(AssignmentMatrix::dense(s), kRealTolerance);
  EXPECT_TRUE(r.pass);
  EXPECT_DOUBLE_EQ(r.lambda, 2.0);
}

TEST(Condition2, TopkZeroRowsListed) {
  const auto s = AssignmentMatrix::from_clusters(std::vector<int>{-1, 0, 1, -1}, 2);
  const auto r = check_condition2(s, 0.0);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.violating_rows, (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(r.violating_sums, (std::vector<double>{0, 0}));
}

TEST(Condition2, MostlyEmptyRowsStillFail) {
  const auto s = AssignmentMatrix::from_clusters(std::vector<int>{-1, -1, -1, 0}, 1);
  const auto r = check_condition2(s, 0.0);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.violating_rows.size(), 3u);
}

TEST(Condition2, InvariantToColumnPermutation) {
  Rng rng(3);
  const Matrix m = test::random_real_features(6, 4, rng).cwiseAbs();
  const auto s = AssignmentMatrix::dense(m);
  const auto t = s.permute_columns(std::vector<int>{3, 1, 0, 2});
  const auto a = check_condition2(s, 1e-9);
  const auto b = check_condition2(t, 1e-9);
  EXPECT_EQ(a.pass, b.pass);
  EXPECT_DOUBLE_EQ(a.lambda, b.lambda);
  EXPECT_EQ(a.violating_rows, b.violating_rows);
}

TEST(Condition2, EmptySRejected) {
  EXPECT_THROW((void)check_condition2(AssignmentMatrix::sparse(0, 1, {}), 0.0), Error);
}

TEST(Condition3, ZeroFeaturesPassTrivially) {
  Rng rng(1);
  const auto s = AssignmentMatrix::dense(test::random_real_features(4, 2, rng));
  const EmbeddingMatrix x(Matrix::Zero(4, 3), FeatureMode::Real);
  const EmbeddingMatrix xp(Matrix::Zero(2, 3), FeatureMode::Real);
  EXPECT_TRUE(check_condition3(x, s, xp, std::nullopt, 0.0).pass);
}

TEST(Condition3, TopkGatingDeviation) {
  const Graph g(4, {}, column({1, 4, 3, 2}), FeatureMode::Integer);
  PoolConfig cfg = PoolConfig::with_k(2);
  cfg.projector = std::vector<double>{1.0};
  const auto x = EmbeddingMatrix::from_graph(g);
  const auto pooled = pool(OperatorId::Topk, g, x, cfg);
  const auto r = check_condition3(x, pooled.assignment, pooled.features, std::nullopt, kRealTolerance);
  EXPECT_FALSE(r.pass);
  const double expected = std::max(3.0 * (1 - std::tanh(3.0)), 4.0 * (1 - std::tanh(4.0)));
  EXPECT_NEAR(r.max_deviation, expected, 1e-12);
}

TEST(Condition3, RWeightedForm) {
  const auto s = AssignmentMatrix::from_clusters(std::vector<int>{0, 0, 1}, 2);
  const EmbeddingMatrix x(column({1, 2, 3}), FeatureMode::Real);
  const EmbeddingMatrix xp(column({1.5, 3}), FeatureMode::Real);
  const std::vector<double> r{0.5, 1.0};
  const auto res = check_condition3(x, s, xp, std::span<const double>(r), 0.0);
  EXPECT_TRUE(res.pass);
  EXPECT_TRUE(res.r_weighted);
  EXPECT_FALSE(check_condition3(x, s, xp, std::nullopt, 0.0).pass);
}

TEST(Condition3, InvariantToSimultaneousPermutation) {
  Rng rng(5);
  const auto s = AssignmentMatrix::dense(test::random_real_features(5, 3, rng).cwiseAbs());
  const EmbeddingMatrix x(test::random_real_features(5, 2, rng), FeatureMode::Real);
  const EmbeddingMatrix xp(s.transpose_times(x.values) + Matrix::Constant(3, 2, 1e-3), FeatureMode::Real);
  const std::vector<int> perm{2, 0, 1};
  const auto sp = s.permute_columns(perm);
  // Column j of sp is column perm[j] of s, so row j of the pooled matrix moves the same way.
  Matrix xpp(3, 2);
  for (int j = 0; j < 3; ++j) xpp.row(j) = xp.values.row(perm[static_cast<std::size_t>(j)]);
  const auto a = check_condition3(x, s, xp, std::nullopt, 1e-9);
  const auto b = check_condition3(x, sp, EmbeddingMatrix(xpp, FeatureMode::Real), std::nullopt, 1e-9);
  EXPECT_EQ(a.pass, b.pass);
  EXPECT_NEAR(a.max_deviation, b.max_deviation, 1e-15);
}

TEST(Condition3, ShapeMismatchRejected) {
  const auto s = AssignmentMatrix::identity(3);
  const EmbeddingMatrix x(Matrix::Ones(3, 1), FeatureMode::Real);
  const EmbeddingMatrix xp(Matrix::Ones(2, 1), FeatureMode::Real);
  EXPECT_THROW((void)check_condition3(x, s, xp, std::nullopt, 0.0), Error);
}

TEST(Audit, CatalogClassification) {
  Rng rng(13);
  const Graph g = random_connected_graph(30, rng);
  const auto x = exact_color_embedding(g, g).first;
  for (OperatorId op : all_operators()) {
    PoolConfig cfg;
    if (operator_info(op).knob == SizeKnob::K) cfg.k = 3;
    if (operator_info(op).knob == SizeKnob::Ratio || operator_info(op).knob == SizeKnob::RatioOrK) cfg.ratio = 0.2;
    const auto report = audit_pooling(x, pool(op, g, x, cfg));
    EXPECT_EQ(report.passes(), operator_info(op).satisfies_conditions) << to_string(op);
    if (op == OperatorId::Topk || op == OperatorId::Sagpool) {
      EXPECT_FALSE(report.cond3.pass);
    }
    if (op == OperatorId::Ecpool) {
      EXPECT_TRUE(report.cond3.r_weighted);
    }
  }
}

TEST(Audit, IntegerBinaryUsesExactTolerance) {
  const Graph g = test::cycle(8);
  const auto x = EmbeddingMatrix::from_graph(g);
  const auto report = audit_pooling(x, pool(OperatorId::Graclus, g, x, PoolConfig::with_ratio(0.5)));
  EXPECT_EQ(report.tolerance, 0.0);
  EXPECT_TRUE(report.passes());
}

TEST(Oracle, TriangleVersusPathGraclus) {
  const GraphPair pair{test::k3(), test::p3()};
  const auto v = theorem1_oracle(pair, OperatorId::Graclus, PoolConfig::with_ratio(0.5), EvalMode::Exact);
  EXPECT_TRUE(v.pre_pool_distinct);
  EXPECT_TRUE(v.post_pool_distinct);
  EXPECT_TRUE(v.conditions_left.passes());
}

TEST(Oracle, RefusesWlEquivalentPair) {
  const GraphPair pair{test::c6(), test::two_c3()};
  for (OperatorId op : all_operators()) {
    PoolConfig cfg;
    if (operator_info(op).knob == SizeKnob::K) cfg.k = 1;
    if (operator_info(op).knob == SizeKnob::Ratio || operator_info(op).knob == SizeKnob::RatioOrK) cfg.ratio = 0.5;
    EXPECT_THROW((void)theorem1_oracle(pair, op, cfg, EvalMode::Exact), OracleError);
  }
}

TEST(Oracle, RejectsRealMode) {
  const GraphPair pair{test::k3(), test::p3()};
  EXPECT_THROW((void)theorem1_oracle(pair, OperatorId::Identity, PoolConfig{}, EvalMode::Real), OracleError);
}

TEST(Oracle, UnequalSupernodeCountsAreDistinct) {
  // kmis picks one centroid on the triangle and two on P4's ends.
  const GraphPair pair{test::k3(), test::p4()};
  const auto v = theorem1_oracle(pair, OperatorId::Kmis, PoolConfig::with_k(1), EvalMode::Exact);
  EXPECT_NE(v.supernodes_left, v.supernodes_right);
  EXPECT_TRUE(v.post_pool_distinct);
}

TEST(Oracle, ExpressiveOperatorsPreserveDistinctness) {
  const auto pairs = generate_wl_pairs(30, {10, 30}, 3);
  for (OperatorId op : {OperatorId::Dense, OperatorId::RandDense, OperatorId::Graclus, OperatorId::CmpGraclus,
                        OperatorId::Kmis, OperatorId::Ecpool, OperatorId::Identity}) {
    PoolConfig cfg = operator_info(op).knob == SizeKnob::K ? PoolConfig::with_k(2) : PoolConfig::with_ratio(0.2);
    if (op == OperatorId::Identity) cfg = PoolConfig{};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto v = theorem1_oracle(pairs[i], op, cfg, EvalMode::Exact, {}, i);
      EXPECT_TRUE(v.pre_pool_distinct);
      EXPECT_TRUE(v.post_pool_distinct) << to_string(op) << " pair " << i;
    }
  }
}

TEST(Counterexample, DefeatsTopkForBothSigns) {
  for (std::uint64_t seed : {0, 1, 2, 99}) {
    const GraphPair pair = build_topk_counterexample(seed);
    EXPECT_TRUE(wl_distinguishable(pair.left, pair.right));
    const auto& x = pair.left.features();
    EXPECT_GT(x(0, 0), x(1, 0));
    EXPECT_GT(x(1, 0), x(2, 0));
    EXPECT_GT(x(2, 0), x(3, 0));
    for (double sign : {1.0, -1.0}) {
      PoolConfig cfg = PoolConfig::with_k(2);
      cfg.projector = std::vector<double>{sign};
      const auto a = pool(OperatorId::Topk, pair.left, EmbeddingMatrix::from_graph(pair.left), cfg);
      const auto b = pool(OperatorId::Topk, pair.right, EmbeddingMatrix::from_graph(pair.right), cfg);
      EXPECT_EQ(multiset_digest(a.features.values, DigestMode::quantized()),
                multiset_digest(b.features.values, DigestMode::quantized()));
      EXPECT_EQ(a.graph, b.graph);
      // Positive projector keeps the two largest features, negative the two smallest.
      const Vector kept = a.assignment.row_sums();
      EXPECT_EQ(kept, sign > 0 ? (Vector(4) << 1, 1, 0, 0).finished() : (Vector(4) << 0, 0, 1, 1).finished());
    }
  }
}

TEST(Counterexample, GraclusSeparatesThePair) {
  const GraphPair pair = build_topk_counterexample();
  const auto cfg = PoolConfig::with_ratio(0.5);
  const auto a = pool(OperatorId::Graclus, pair.left, EmbeddingMatrix::from_graph(pair.left), cfg);
  const auto b = pool(OperatorId::Graclus, pair.right, EmbeddingMatrix::from_graph(pair.right), cfg);
  EXPECT_FALSE(multiset_digest(a.features.values, DigestMode::exact()) ==
               multiset_digest(b.features.values, DigestMode::exact()));
  EXPECT_TRUE(theorem1_oracle(pair, OperatorId::Graclus, cfg, EvalMode::Exact).post_pool_distinct);
}

TEST(Counterexample, OracleAtInitialColorsMatchesTopkFailure) {
  const GraphPair pair = build_topk_counterexample();
  const OracleOptions at_zero{0};
  const auto topk = theorem1_oracle(pair, OperatorId::Topk, PoolConfig::with_k(2), EvalMode::Exact, at_zero);
  EXPECT_FALSE(topk.post_pool_distinct);
  const auto graclus =
      theorem1_oracle(pair, OperatorId::Graclus, PoolConfig::with_ratio(0.5), EvalMode::Exact, at_zero);
  EXPECT_TRUE(graclus.post_pool_distinct);
}

}  // namespace
}  // namespace poolex
