#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <stdexcept>
#include <string>

namespace cutmg {

using Scalar = double;
using Index = Eigen::Index;

using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Compressed-row sparse matrix with sorted column indices (after makeCompressed()).
using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<Scalar>;

/// Invalid configuration or a violated precondition of an operation.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure inside a solver (breakdown, non-SPD operator, stagnation).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cutmg
