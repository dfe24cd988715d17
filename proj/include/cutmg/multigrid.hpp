#pragma once

#include <memory>
#include <vector>

#include "cutmg/report.hpp"
#include "cutmg/sparse.hpp"
#include "cutmg/types.hpp"

namespace cutmg {

enum class SmootherKind { sgs, jacobi };

struct SmootherOptions {
  SmootherKind kind = SmootherKind::sgs;
  int sweeps = 3;              // pre- and post-smoothing count per cycle
  Scalar damping = 2.0 / 3.0;  // jacobi only
};

/// Runs options.sweeps smoothing iterations on A x = b in place. One SGS
/// sweep is a forward then a backward Gauss-Seidel pass in dof order; one
/// Jacobi sweep is a damped simultaneous update. Throws SolverError when the
/// diagonal has a zero entry.
void smooth(const SparseMatrix& A, Vector& x, const Vector& b, const SmootherOptions& options);

struct MultigridOptions {
  SmootherOptions smoother;
  Index coarse_direct_limit = DirectSolver::kDefaultMaxDofs;
};

/// Galerkin hierarchy, coarsest level first. transfers[l] prolongates level
/// l to level l+1 and matrices[l] = transfers[l]^T matrices[l+1] transfers[l].
struct MultigridHierarchy {
  std::vector<SparseMatrix> matrices;
  std::vector<SparseMatrix> transfers;
  MultigridOptions options;
  std::unique_ptr<DirectSolver> coarse_solver;

  int n_levels() const { return static_cast<int>(matrices.size()); }
  const SparseMatrix& finest() const { return matrices.back(); }
};

/// Builds the Galerkin chain from the finest matrix down the given transfers
/// and factorizes the coarsest operator. Verifies that every coarse operator
/// stays symmetric. Requires at least one transfer (two levels).
MultigridHierarchy setup_multigrid(SparseMatrix A_finest, std::vector<SparseMatrix> transfers,
                                   MultigridOptions options = {});

/// One V-cycle applied to a finest-level residual: zero-initialized
/// correction, pre-smoothing, recursive coarse-grid correction with a direct
/// solve on level 0, post-smoothing. With equal pre/post SGS smoothing the
/// cycle is a symmetric operator, so it can precondition CG.
Vector v_cycle(const MultigridHierarchy& h, const Vector& residual);

/// Stationary iteration u += v_cycle(f - A u), terminating when the energy
/// norm of the residual drops below tol relative to the energy norm of f.
/// Throws SolverError when max_iters is exceeded.
SolveResult solve_stationary(const MultigridHierarchy& h, const Vector& f, Scalar tol = 1e-12,
                             int max_iters = 200);

}  // namespace cutmg
