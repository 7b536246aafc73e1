#pragma once

#include <Eigen/Dense>

namespace poolex {

/// Row-major dense matrix of doubles; rows are nodes (or supernodes).
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

}  // namespace poolex
