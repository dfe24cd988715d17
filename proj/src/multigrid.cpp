#include "cutmg/multigrid.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <string>

namespace cutmg {

namespace {

void check_diagonal(const Vector& diag) {
  for (Index i = 0; i < diag.size(); ++i)
    if (diag[i] == Scalar(0))
      throw SolverError("smoother: zero diagonal entry at row " + std::to_string(i));
}

void gauss_seidel_sweep(const SparseMatrix& A, Vector& x, const Vector& b, bool forward) {
  const Index n = A.rows();
  for (Index k = 0; k < n; ++k) {
    const Index i = forward ? k : n - 1 - k;
    Scalar sum = b[i];
    Scalar diag = 0;
    for (SparseMatrix::InnerIterator it(A, i); it; ++it) {
      if (it.col() == i)
        diag = it.value();
      else
        sum -= it.value() * x[it.col()];
    }
    x[i] = sum / diag;
  }
}

Scalar energy_norm(const SparseMatrix& A, const Vector& v) {
  return std::sqrt(std::max(Scalar(0), v.dot(A * v)));
}

std::string format_residual(Scalar value) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << value;
  return out.str();
}

Vector level_cycle(const MultigridHierarchy& h, int level, const Vector& r) {
  if (level == 0) return h.coarse_solver->solve(r);
  const SparseMatrix& A = h.matrices[level];
  const SparseMatrix& T = h.transfers[level - 1];

  Vector c = Vector::Zero(r.size());
  smooth(A, c, r, h.options.smoother);
  const Vector coarse_residual = T.transpose() * (r - A * c);
  c += T * level_cycle(h, level - 1, coarse_residual);
  smooth(A, c, r, h.options.smoother);
  return c;
}

}  // namespace

void smooth(const SparseMatrix& A, Vector& x, const Vector& b, const SmootherOptions& options) {
  const Vector diag = A.diagonal();
  check_diagonal(diag);
  if (options.kind == SmootherKind::jacobi) {
    for (int s = 0; s < options.sweeps; ++s)
      x += options.damping * (b - A * x).cwiseQuotient(diag);
    return;
  }
  for (int s = 0; s < options.sweeps; ++s) {
    gauss_seidel_sweep(A, x, b, true);
    gauss_seidel_sweep(A, x, b, false);
  }
}

MultigridHierarchy setup_multigrid(SparseMatrix A_finest, std::vector<SparseMatrix> transfers,
                                   MultigridOptions options) {
  if (transfers.empty()) throw ConfigError("multigrid requires at least two levels");

  MultigridHierarchy h;
  h.options = options;
  h.transfers = std::move(transfers);
  const int coarse_levels = static_cast<int>(h.transfers.size());
  h.matrices.resize(coarse_levels + 1);
  A_finest.makeCompressed();
  h.matrices[coarse_levels] = std::move(A_finest);

  for (int l = coarse_levels - 1; l >= 0; --l) {
    const SparseMatrix& T = h.transfers[l];
    if (T.rows() != h.matrices[l + 1].rows())
      throw ConfigError("multigrid: transfer/operator dimension mismatch at level " +
                        std::to_string(l));
    h.matrices[l] = triple_product(T, h.matrices[l + 1]);
    if (!is_symmetric(h.matrices[l], 1e-12))
      throw SolverError("multigrid: coarse operator lost symmetry at level " +
                        std::to_string(l));
  }

  h.coarse_solver = std::make_unique<DirectSolver>(h.matrices[0], options.coarse_direct_limit);
  return h;
}

Vector v_cycle(const MultigridHierarchy& h, const Vector& residual) {
  if (residual.size() != h.finest().rows())
    throw ConfigError("v_cycle: residual dimension mismatch");
  return level_cycle(h, h.n_levels() - 1, residual);
}

SolveResult solve_stationary(const MultigridHierarchy& h, const Vector& f, Scalar tol,
                             int max_iters) {
  const auto start = std::chrono::steady_clock::now();
  const auto elapsed = [&start] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  const SparseMatrix& A = h.finest();
  SolveResult out;
  out.u = Vector::Zero(A.rows());
  const Scalar norm0 = energy_norm(A, f);
  if (norm0 == 0) {
    out.report.seconds = elapsed();
    return out;
  }

  Vector r = f;
  for (int k = 1; k <= max_iters; ++k) {
    const Vector c = v_cycle(h, r);
    out.u += c;
    out.report.energy_diffs.push_back(energy_norm(A, c));
    r = f - A * out.u;
    const Scalar rel = energy_norm(A, r) / norm0;
    out.report.residuals.push_back(rel);
    out.report.iterations = k;
    if (rel < tol) {
      out.report.rho_star = estimate_rho_star(out.report.energy_diffs);
      out.report.seconds = elapsed();
      return out;
    }
  }
  throw SolverError("stationary multigrid: no convergence after " + std::to_string(max_iters) +
                    " iterations (relative residual " +
                    format_residual(out.report.residuals.back()) + ")");
}

}  // namespace cutmg
