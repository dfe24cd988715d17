#include "cutmg/sparse.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <fstream>
#include <ostream>
#include <random>

namespace cutmg {

Scalar asymmetry(const SparseMatrix& A) {
  if (A.rows() != A.cols()) throw ConfigError("asymmetry: matrix is not square");
  if (A.nonZeros() == 0) return 0;
  SparseMatrix At = SparseMatrix(A.transpose());
  Scalar scale = 0;
  for (Index k = 0; k < A.nonZeros(); ++k)
    scale = std::max(scale, std::abs(A.valuePtr()[k]));
  if (scale == 0) return 0;
  SparseMatrix D = A - At;
  Scalar diff = 0;
  for (Index k = 0; k < D.nonZeros(); ++k)
    diff = std::max(diff, std::abs(D.valuePtr()[k]));
  return diff / scale;
}

SparseMatrix triple_product(const SparseMatrix& P, const SparseMatrix& A) {
  if (A.rows() != A.cols() || A.rows() != P.rows())
    throw ConfigError("triple_product: incompatible dimensions");
  SparseMatrix result = P.transpose() * A * P;
  result.makeCompressed();
  return result;
}

DirectSolver::DirectSolver(const SparseMatrix& A, Index max_dofs) : rows_(A.rows()) {
  if (A.rows() != A.cols()) throw ConfigError("DirectSolver: matrix is not square");
  if (A.rows() > max_dofs)
    throw ConfigError("DirectSolver: " + std::to_string(A.rows()) +
                      " dofs exceed the direct-solve limit of " + std::to_string(max_dofs) +
                      "; use a deeper hierarchy");
  llt_.compute(Eigen::SparseMatrix<Scalar>(A));
  if (llt_.info() != Eigen::Success)
    throw SolverError("DirectSolver: LDLT factorization failed (matrix not SPD?)");
}

Vector DirectSolver::solve(const Vector& b) const {
  if (b.size() != rows_) throw ConfigError("DirectSolver::solve: size mismatch");
  return llt_.solve(b);
}

Scalar dense_generalized_eig_max(const Matrix& B, const Matrix& C, const Matrix& kernel) {
  const Index n = B.rows();
  if (B.cols() != n || C.rows() != n || C.cols() != n)
    throw ConfigError("dense_generalized_eig_max: B and C must be square and equal size");
  if (kernel.rows() != n || kernel.cols() < 1 || kernel.cols() >= n)
    throw ConfigError("dense_generalized_eig_max: kernel must be n-by-k with 1 <= k < n");
  const Index k = kernel.cols();

  // Orthonormal basis of the complement of span(kernel): the trailing n-k
  // columns of a full QR of the kernel block.
  Eigen::HouseholderQR<Matrix> qr(kernel);
  const Matrix Q = qr.householderQ();
  const Matrix P = Q.rightCols(n - k);

  const Matrix Bp = P.transpose() * B * P;
  const Matrix Cp = P.transpose() * C * P;

  // Reduce to a standard symmetric problem via the Cholesky factor of the
  // deflated C: B y = lambda C y  <=>  L^{-1} B L^{-T} z = lambda z.
  Eigen::LLT<Matrix> llt(Cp);
  if (llt.info() != Eigen::Success)
    throw SolverError("dense_generalized_eig_max: deflated C is not SPD");
  const Matrix L = llt.matrixL();
  Matrix S = L.triangularView<Eigen::Lower>().solve(Bp);
  S = L.triangularView<Eigen::Lower>().solve(Matrix(S.transpose()));

  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (S + S.transpose()),
                                            Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success)
    throw SolverError("dense_generalized_eig_max: eigenvalue iteration failed");
  return eig.eigenvalues().maxCoeff();
}

namespace {

/// Largest Ritz value of op (symmetric) from Lanczos with full
/// reorthogonalization; stops once the value stagnates to rel_tol over three
/// consecutive steps.
Scalar lanczos_max(const std::function<Vector(const Vector&)>& op, Index n, Scalar rel_tol,
                   int max_steps) {
  std::mt19937 gen(42);
  std::uniform_real_distribution<Scalar> dist(-1.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(gen);
  v.normalize();

  const int m_cap = static_cast<int>(std::min<Index>(max_steps, n));
  Matrix V(n, m_cap);
  Vector alpha(m_cap), beta(m_cap);
  V.col(0) = v;

  Scalar prev = 0;
  int stable = 0;
  int m = 0;
  for (int j = 0; j < m_cap; ++j) {
    Vector w = op(V.col(j));
    alpha[j] = V.col(j).dot(w);
    w -= alpha[j] * V.col(j);
    if (j > 0) w -= beta[j - 1] * V.col(j - 1);
    // Full reorthogonalization, twice for stability.
    for (int pass = 0; pass < 2; ++pass)
      w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
    beta[j] = w.norm();
    m = j + 1;

    Eigen::SelfAdjointEigenSolver<Matrix> eig;
    Matrix T = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    eig.compute(T, Eigen::EigenvaluesOnly);
    const Scalar cur = eig.eigenvalues().maxCoeff();

    if (j > 0 && std::abs(cur - prev) <= rel_tol * std::abs(cur)) {
      if (++stable >= 3) return cur;
    } else {
      stable = 0;
    }
    prev = cur;

    if (beta[j] <= 1e-14 * std::abs(alpha[j]) || j + 1 == m_cap) return cur;
    V.col(j + 1) = w / beta[j];
  }
  return prev;
}

}  // namespace

ExtremalEigs extremal_eigs(const SparseMatrix& A, Scalar tol, int max_steps,
                           const InverseApply& inverse_apply) {
  if (A.rows() != A.cols()) throw ConfigError("extremal_eigs: matrix is not square");
  const Index n = A.rows();
  if (n == 0) throw ConfigError("extremal_eigs: empty matrix");

  ExtremalEigs out;
  out.max = lanczos_max([&](const Vector& x) { return Vector(A * x); }, n, tol, max_steps);

  if (inverse_apply) {
    const Scalar inv_max = lanczos_max(inverse_apply, n, tol, max_steps);
    out.min = 1.0 / inv_max;
  } else {
    DirectSolver solver(A);
    const Scalar inv_max =
        lanczos_max([&](const Vector& x) { return solver.solve(x); }, n, tol, max_steps);
    out.min = 1.0 / inv_max;
  }
  return out;
}

void write_matrix_market(const SparseMatrix& A, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << A.rows() << " " << A.cols() << " " << A.nonZeros() << "\n";
  out.precision(17);
  for (Index r = 0; r < A.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(A, r); it; ++it)
      out << it.row() + 1 << " " << it.col() + 1 << " " << it.value() << "\n";
}

void write_matrix_market(const SparseMatrix& A, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("write_matrix_market: cannot open " + path);
  write_matrix_market(A, out);
}

}  // namespace cutmg
