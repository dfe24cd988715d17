#pragma once

#include <Eigen/SparseCholesky>

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

#include "cutmg/types.hpp"

namespace cutmg {

/// Maximum relative asymmetry max|A - A^T| / max|A|; 0 for an empty matrix.
Scalar asymmetry(const SparseMatrix& A);

inline bool is_symmetric(const SparseMatrix& A, Scalar tol = 1e-13) {
  return asymmetry(A) <= tol;
}

/// Galerkin triple product P^T A P.
SparseMatrix triple_product(const SparseMatrix& P, const SparseMatrix& A);

/// Sparse Cholesky (LDLT) factorization of an SPD matrix, intended for
/// coarsest-level solves. Factoring a matrix larger than max_dofs (default
/// 50k rows) is rejected; the multigrid hierarchy must be deepened instead.
class DirectSolver {
 public:
  static constexpr Index kDefaultMaxDofs = 50000;

  explicit DirectSolver(const SparseMatrix& A, Index max_dofs = kDefaultMaxDofs);

  Vector solve(const Vector& b) const;
  Index rows() const { return rows_; }

 private:
  Index rows_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<Scalar>> llt_;
};

/// Largest eigenvalue of the pencil B x = lambda C x restricted to the
/// orthogonal complement of span(kernel). B must be symmetric positive
/// semi-definite and C symmetric positive definite on that complement;
/// kernel is an n-by-k matrix of linearly independent kernel vectors of C.
/// Throws SolverError when the deflated C is not SPD.
Scalar dense_generalized_eig_max(const Matrix& B, const Matrix& C, const Matrix& kernel);

/// Extremal eigenvalue estimates of a symmetric matrix by the Lanczos method
/// with full reorthogonalization.
struct ExtremalEigs {
  Scalar min = 0;
  Scalar max = 0;
  Scalar condition() const { return max / min; }
};

/// Applies an approximation of A^{-1}; used to steer the small end of the
/// spectrum. When absent, extremal_eigs factorizes A directly (subject to
/// the DirectSolver size limit).
using InverseApply = std::function<Vector(const Vector&)>;

/// Estimates the extremal eigenvalues of the SPD matrix A. The largest
/// eigenvalue comes from Lanczos applied to A, the smallest from Lanczos
/// applied to A^{-1} (through inverse_apply or an internal factorization).
/// tol is the relative stagnation tolerance of the Ritz values; max_steps
/// caps the Krylov dimension.
ExtremalEigs extremal_eigs(const SparseMatrix& A, Scalar tol = 1e-8, int max_steps = 150,
                           const InverseApply& inverse_apply = nullptr);

/// Writes A in MatrixMarket coordinate format.
void write_matrix_market(const SparseMatrix& A, std::ostream& out);
void write_matrix_market(const SparseMatrix& A, const std::string& path);

}  // namespace cutmg
