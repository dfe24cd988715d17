#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <sstream>

#include "cutmg/sparse.hpp"

using cutmg::Index;
using cutmg::Matrix;
using cutmg::Scalar;
using cutmg::SparseMatrix;
using cutmg::Vector;

namespace {

SparseMatrix to_sparse(const Matrix& dense) {
  SparseMatrix A(dense.rows(), dense.cols());
  std::vector<cutmg::Triplet> trips;
  for (Index i = 0; i < dense.rows(); ++i)
    for (Index j = 0; j < dense.cols(); ++j)
      if (dense(i, j) != 0) trips.emplace_back(i, j, dense(i, j));
  A.setFromTriplets(trips.begin(), trips.end());
  return A;
}

Matrix random_matrix(Index rows, Index cols, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<Scalar> dist(-1.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = dist(gen);
  return m;
}

}  // namespace

TEST_CASE("sparse product matches the dense oracle") {
  const Matrix dense = random_matrix(5, 5, 11);
  const SparseMatrix A = to_sparse(dense);
  const Vector x = random_matrix(5, 1, 12);
  const Vector got = A * x;
  const Vector want = dense * x;
  CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("asymmetry measures the relative symmetry defect") {
  Matrix dense = random_matrix(6, 6, 13);
  dense = (dense + dense.transpose()).eval();
  CHECK(cutmg::asymmetry(to_sparse(dense)) <= 1e-15);
  CHECK(cutmg::is_symmetric(to_sparse(dense)));
  dense(1, 2) += 0.5;
  CHECK_FALSE(cutmg::is_symmetric(to_sparse(dense), 1e-13));
  CHECK(cutmg::asymmetry(to_sparse(dense)) == doctest::Approx(0.5 / dense.cwiseAbs().maxCoeff()));
}

TEST_CASE("triple product matches the dense congruence") {
  const Matrix Pd = random_matrix(8, 5, 21);
  Matrix Ad = random_matrix(8, 8, 22);
  Ad = (Ad + Ad.transpose()).eval();
  const SparseMatrix got = cutmg::triple_product(to_sparse(Pd), to_sparse(Ad));
  const Matrix want = Pd.transpose() * Ad * Pd;
  CHECK((Matrix(got) - want).cwiseAbs().maxCoeff() <= 1e-13);
  CHECK_THROWS_AS(cutmg::triple_product(to_sparse(Pd), to_sparse(random_matrix(5, 5, 23))),
                  cutmg::ConfigError);
}

TEST_CASE("direct solver inverts an SPD matrix and enforces its size limit") {
  const Index n = 50;
  Matrix dense = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    dense(i, i) = 4.0 + 0.01 * Scalar(i);
    if (i + 1 < n) dense(i, i + 1) = dense(i + 1, i) = -1.0;
  }
  const SparseMatrix A = to_sparse(dense);
  cutmg::DirectSolver solver(A);
  const Vector b = random_matrix(n, 1, 31);
  const Vector x = solver.solve(b);
  CHECK((dense * x - b).norm() <= 1e-10 * b.norm());
  CHECK_THROWS_AS(cutmg::DirectSolver(A, 10), cutmg::ConfigError);
  CHECK_THROWS_AS(solver.solve(Vector::Zero(n + 1)), cutmg::ConfigError);
}

TEST_CASE("deflated generalized eigenvalue matches a determinant-root oracle") {
  const Index n = 6, k = 2;
  // Kernel of C: two fixed directions; C is SPD on their orthogonal
  // complement Z, B is symmetric positive semi-definite of low rank.
  const Matrix kernel = random_matrix(n, k, 41);
  const Eigen::HouseholderQR<Matrix> qr(kernel);
  const Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix Z = Q.rightCols(n - k);  // orthonormal complement of the kernel

  const Matrix G = random_matrix(n, 3, 42);
  const Matrix B = G * G.transpose();
  Matrix D = random_matrix(n - k, n - k, 43);
  D = (D * D.transpose() + 0.5 * Matrix::Identity(n - k, n - k)).eval();
  const Matrix C = Z * D * Z.transpose();

  const Scalar got = cutmg::dense_generalized_eig_max(B, C, kernel);

  // Oracle: the largest root of det(Z^T (B - lambda C) Z) located by a
  // downward sign scan and bisection.
  const Matrix Bt = Z.transpose() * B * Z;
  const Matrix Ct = Z.transpose() * C * Z;
  auto det = [&](Scalar lam) { return (Bt - lam * Ct).determinant(); };
  Scalar hi = 2.0 * Bt.norm() / Ct.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff() + 1.0;
  const Scalar sign_hi = det(hi) > 0 ? 1.0 : -1.0;
  Scalar lo = hi;
  const Scalar step = hi / 4096;
  while (lo > -step && det(lo) * sign_hi > 0) lo -= step;
  REQUIRE(lo > -step);  // a root exists: B is nonzero on the complement
  for (int it = 0; it < 200; ++it) {
    const Scalar mid = 0.5 * (lo + hi);
    if (det(mid) * sign_hi > 0)
      hi = mid;
    else
      lo = mid;
  }
  const Scalar want = 0.5 * (lo + hi);
  CHECK(got == doctest::Approx(want).epsilon(1e-10));

  // A C that is singular on the complement is rejected.
  CHECK_THROWS_AS(cutmg::dense_generalized_eig_max(B, Matrix::Zero(n, n), kernel),
                  cutmg::SolverError);
}

TEST_CASE("extremal eigenvalue estimates match a dense oracle") {
  const Index n = 30;
  Matrix dense = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    dense(i, i) = 3.0 + 0.07 * Scalar(i);
    if (i + 1 < n) dense(i, i + 1) = dense(i + 1, i) = -1.0;
  }
  const SparseMatrix A = to_sparse(dense);
  const Eigen::SelfAdjointEigenSolver<Matrix> es(dense);
  const Scalar lam_min = es.eigenvalues().minCoeff();
  const Scalar lam_max = es.eigenvalues().maxCoeff();

  const auto eigs = cutmg::extremal_eigs(A);
  CHECK(eigs.min == doctest::Approx(lam_min).epsilon(1e-8));
  CHECK(eigs.max == doctest::Approx(lam_max).epsilon(1e-8));
  CHECK(eigs.condition() == doctest::Approx(lam_max / lam_min).epsilon(1e-7));

  // Steering the small end through a caller-provided approximate inverse.
  const Eigen::PartialPivLU<Matrix> lu(dense);
  const auto eigs2 = cutmg::extremal_eigs(A, 1e-8, 150, [&](const Vector& v) {
    return Vector(lu.solve(v));
  });
  CHECK(eigs2.min == doctest::Approx(lam_min).epsilon(1e-8));
}

TEST_CASE("matrix market output round-trips") {
  Matrix dense = random_matrix(4, 3, 51);
  dense(2, 1) = 0;  // structural zero stays out of the file
  const SparseMatrix A = to_sparse(dense);
  std::ostringstream out;
  cutmg::write_matrix_market(A, out);

  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "%%MatrixMarket matrix coordinate real general");
  Index rows, cols, nnz;
  in >> rows >> cols >> nnz;
  CHECK(rows == 4);
  CHECK(cols == 3);
  CHECK(nnz == A.nonZeros());
  Matrix parsed = Matrix::Zero(rows, cols);
  for (Index e = 0; e < nnz; ++e) {
    Index i, j;
    Scalar v;
    in >> i >> j >> v;
    parsed(i - 1, j - 1) = v;
  }
  CHECK((parsed - dense).cwiseAbs().maxCoeff() <= 1e-15);
}
