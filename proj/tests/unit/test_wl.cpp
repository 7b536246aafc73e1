#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "poolex/error.hpp"
#include "poolex/isomorphism.hpp"
#include "poolex/wl.hpp"

namespace poolex {
namespace {

using test::column;

TEST(Wl, TriangleVersusPath) {
  EXPECT_TRUE(wl_distinguishable(test::k3(), test::p3()));
  EXPECT_EQ(wl_divergence_round(test::k3(), test::p3(), WlInit::Uniform), 1u);
}

TEST(Wl, CycleVersusTwoTrianglesIsBlindSpot) {
  EXPECT_FALSE(wl_distinguishable(test::c6(), test::two_c3()));
  EXPECT_FALSE(wl_divergence_round(test::c6(), test::two_c3(), WlInit::Uniform));
}

TEST(Wl, DifferentSizesAreDistinguishable) {
  EXPECT_TRUE(wl_distinguishable(test::k3(), test::p4()));
}

TEST(Wl, IntegerFeaturesSeparateAtRoundZero) {
  const Graph a(2, {{0, 1}}, column({1, 2}), FeatureMode::Integer);
  const Graph b(2, {{0, 1}}, column({1, 3}), FeatureMode::Integer);
  EXPECT_EQ(default_wl_init(a, b), WlInit::FromIntegerFeatures);
  EXPECT_EQ(wl_divergence_round(a, b, WlInit::FromIntegerFeatures), 0u);
  EXPECT_FALSE(wl_divergence_round(a, b, WlInit::Uniform));
}

TEST(Wl, LabelsTakePrecedence) {
  const Graph a(2, {{0, 1}}, column({1, 1}), FeatureMode::Integer, std::vector<int>{0, 1});
  const Graph b(2, {{0, 1}}, column({1, 1}), FeatureMode::Integer, std::vector<int>{0, 0});
  EXPECT_EQ(default_wl_init(a, b), WlInit::FromLabels);
  EXPECT_TRUE(wl_distinguishable(a, b));
}

TEST(Wl, RealFeaturesFallBackToUniform) {
  const Graph a(2, {{0, 1}}, column({0.5, 1}), FeatureMode::Real);
  EXPECT_EQ(default_wl_init(a, a), WlInit::Uniform);
  EXPECT_THROW((void)wl_refine_joint(a, a, WlInit::FromIntegerFeatures), GraphError);
}

TEST(Wl, JointPaletteIsSymmetric) {
  const auto ab = wl_refine_joint(test::k3(), test::p3(), WlInit::Uniform);
  const auto ba = wl_refine_joint(test::p3(), test::k3(), WlInit::Uniform);
  EXPECT_EQ(ab.left.colors, ba.right.colors);
  EXPECT_EQ(ab.right.colors, ba.left.colors);
  EXPECT_EQ(ab.palette_size, ba.palette_size);
}

TEST(Wl, RoundLimitedRefinement) {
  const auto zero = wl_refine_joint(test::k3(), test::p3(), WlInit::Uniform, 0);
  EXPECT_EQ(zero.palette_size, 1u);
  EXPECT_EQ(zero.left.histogram, zero.right.histogram);
}

TEST(Wl, InvariantUnderRelabeling) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.below(15);
    std::vector<Edge> edges;
    for (int u = 0; u < static_cast<int>(n); ++u) {
      for (int v = u + 1; v < static_cast<int>(n); ++v) {
        if (rng.uniform() < 0.25) edges.push_back({u, v});
      }
    }
    const Graph g(n, edges, test::random_int_features(n, 1, 3, rng), FeatureMode::Integer);
    const auto perm = test::random_permutation(n, rng);
    EXPECT_FALSE(wl_distinguishable(g, permute(g, perm)));
  }
}

TEST(Isomorphism, BruteForce) {
  EXPECT_FALSE(brute_force_isomorphic(test::c6(), test::two_c3()));
  EXPECT_TRUE(brute_force_isomorphic(test::c6(), permute(test::c6(), std::vector<int>{3, 1, 5, 0, 2, 4})));
  EXPECT_FALSE(brute_force_isomorphic(test::k3(), test::p3()));
}

TEST(Isomorphism, RespectsFeatures) {
  const Graph a(2, {{0, 1}}, column({1, 2}), FeatureMode::Integer);
  const Graph b(2, {{0, 1}}, column({2, 1}), FeatureMode::Integer);
  const Graph c(2, {{0, 1}}, column({2, 2}), FeatureMode::Integer);
  EXPECT_TRUE(brute_force_isomorphic(a, b));
  EXPECT_FALSE(brute_force_isomorphic(a, c));
}

TEST(Isomorphism, RefusesLargeGraphs) {
  EXPECT_THROW((void)brute_force_isomorphic(test::cycle(11), test::cycle(11)), Error);
}

}  // namespace
}  // namespace poolex
