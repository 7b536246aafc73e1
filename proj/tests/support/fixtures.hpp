#pragma once

#include <numeric>
#include <vector>

#include "poolex/graph.hpp"
#include "poolex/rng.hpp"

namespace poolex::test {

inline Graph unit_graph(std::size_t n, std::vector<Edge> edges) {
  return Graph::with_unit_features(n, std::move(edges));
}

inline Graph k3() { return unit_graph(3, {{0, 1}, {0, 2}, {1, 2}}); }
inline Graph p3() { return unit_graph(3, {{0, 1}, {1, 2}}); }
inline Graph p4() { return unit_graph(4, {{0, 1}, {1, 2}, {2, 3}}); }

inline Graph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    const int a = static_cast<int>(i);
    const int b = static_cast<int>((i + 1) % n);
    edges.push_back({std::min(a, b), std::max(a, b)});
  }
  return unit_graph(n, edges);
}

inline Graph c6() { return cycle(6); }
inline Graph two_c3() { return unit_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

inline Matrix column(std::initializer_list<double> values) {
  Matrix m(static_cast<Eigen::Index>(values.size()), 1);
  Eigen::Index i = 0;
  for (double v : values) m(i++, 0) = v;
  return m;
}

inline std::vector<int> random_permutation(std::size_t n, Rng& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(perm.begin(), perm.end());
  return perm;
}

/// Row perm[i] of the result is row i of x.
inline Matrix permute_rows(const Matrix& x, const std::vector<int>& perm) {
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) out.row(perm[static_cast<std::size_t>(i)]) = x.row(i);
  return out;
}

/// Integer features in [0, hi), one column per entry of `dim`.
inline Matrix random_int_features(std::size_t n, std::size_t dim, int hi, Rng& rng) {
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = static_cast<double>(rng.below(static_cast<std::uint64_t>(hi)));
  }
  return x;
}

inline Matrix random_real_features(std::size_t n, std::size_t dim, Rng& rng) {
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = rng.normal();
  }
  return x;
}

}  // namespace poolex::test
