#pragma once

#include "cutmg/report.hpp"
#include "cutmg/types.hpp"

namespace cutmg {

LinearOperator identity_preconditioner();

/// Inverse-diagonal preconditioner. Throws SolverError on a zero diagonal.
LinearOperator jacobi_preconditioner(const SparseMatrix& A);

/// One symmetric Gauss-Seidel sweep (forward then backward) applied to a
/// zero start, matching the multigrid smoother. A must outlive the operator.
LinearOperator sgs_preconditioner(const SparseMatrix& A);

/// Preconditioned conjugate gradients from a zero start. Terminates when the
/// energy norm of the true residual drops below tol relative to that of the
/// right-hand side: sqrt(r^T A r) < tol * sqrt(f^T A f). The residual is
/// recomputed from scratch every 50 iterations to bound recurrence drift.
/// The preconditioner must be symmetric positive definite; symmetry is
/// spot-checked with a seeded random pair before iterating. Throws
/// SolverError on indefiniteness or when max_iters is exceeded.
SolveResult cg(const SparseMatrix& A, const Vector& f, const LinearOperator& precondition,
               Scalar tol = 1e-12, int max_iters = 50000);

}  // namespace cutmg
