#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <set>

#include "cutmg/p1.hpp"
#include "cutmg/problem.hpp"
#include "cutmg/quadrature.hpp"
#include "cutmg/sparse.hpp"
#include "cutmg/transfer.hpp"

using cutmg::CutDecomposition;
using cutmg::EnrichedSpace;
using cutmg::Index;
using cutmg::InterfaceSet;
using cutmg::Matrix;
using cutmg::Scalar;
using cutmg::SparseMatrix;
using cutmg::TriMesh;
using cutmg::Vec2;
using cutmg::Vector;

namespace {

struct Pair {
  TriMesh coarse_mesh;
  CutDecomposition coarse_cut;
  EnrichedSpace coarse;
  TriMesh fine_mesh;
  CutDecomposition fine_cut;
  EnrichedSpace fine;

  Pair(int n, const InterfaceSet& set)
      : coarse_mesh(n),
        coarse_cut(cutmg::classify_and_cut(coarse_mesh, set)),
        coarse(coarse_mesh, coarse_cut),
        fine_mesh(2 * n),
        fine_cut(cutmg::classify_and_cut(fine_mesh, set)),
        fine(fine_mesh, fine_cut) {}

  cutmg::Transfer transfer() const {
    return cutmg::build_transfer(fine_mesh, fine_cut, fine, coarse_mesh, coarse_cut, coarse);
  }
};

// Element-part mass matrix of the background P1 basis, assembled with an
// independent quadrature loop.
Eigen::Matrix3d part_mass_oracle(const TriMesh& mesh, Index element,
                                 const std::vector<cutmg::SubTriangle>& parts) {
  const auto coords = mesh.triangle_coords(element);
  Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
  for (const auto& part : parts)
    for (const auto& q : cutmg::triangle_rule(part.v[0], part.v[1], part.v[2], 2)) {
      const auto phi = cutmg::basis_values(coords, q.x);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) M(a, b) += q.w * phi[a] * phi[b];
    }
  return M;
}

// Subdomain-blocked linear interpolation weights of one fine dof: the coarse
// grid nodes under the fine node, or the endpoints of the coarse edge whose
// midpoint it is. Returns false when a needed coarse dof does not exist.
bool interpolation_row(const Pair& d, Index fine_dof, std::map<Index, Scalar>& row) {
  row.clear();
  const int sub = d.fine.subdomain_of_dof(fine_dof);
  const Index node = d.fine.node_of_dof(fine_dof);
  const int nf = d.fine_mesh.n();
  const int i = static_cast<int>(node % (nf + 1));
  const int j = static_cast<int>(node / (nf + 1));
  std::vector<std::pair<int, int>> parents;
  if (i % 2 == 0 && j % 2 == 0)
    parents = {{i / 2, j / 2}};
  else if (i % 2 == 1 && j % 2 == 0)
    parents = {{(i - 1) / 2, j / 2}, {(i + 1) / 2, j / 2}};
  else if (i % 2 == 0)
    parents = {{i / 2, (j - 1) / 2}, {i / 2, (j + 1) / 2}};
  else  // cell centers sit on the lower-left to upper-right diagonal
    parents = {{(i - 1) / 2, (j - 1) / 2}, {(i + 1) / 2, (j + 1) / 2}};
  const Scalar weight = parents.size() == 1 ? 1.0 : 0.5;
  for (const auto& [ic, jc] : parents) {
    const Index cnode = Index(jc) * (d.coarse_mesh.n() + 1) + ic;
    const Index cdof = d.coarse.dof(sub, cnode);
    if (cdof < 0) return false;
    row[cdof] = weight;
  }
  return true;
}

void check_against_interpolation(const Pair& d) {
  const auto transfer = d.transfer();
  const std::set<Index> flagged(transfer.flagged_rows.begin(), transfer.flagged_rows.end());
  std::map<Index, Scalar> want;
  for (Index r = 0; r < d.fine.n_dofs(); ++r) {
    CAPTURE(r);
    std::map<Index, Scalar> got;
    for (SparseMatrix::InnerIterator it(transfer.T, r); it; ++it) got[it.col()] = it.value();
    if (!interpolation_row(d, r, want)) {
      CHECK(flagged.count(r) == 1);
      CHECK(got.empty());
      continue;
    }
    REQUIRE(flagged.count(r) == 0);
    REQUIRE(got.size() == want.size());
    for (const auto& [col, value] : want) {
      REQUIRE(got.count(col) == 1);
      CHECK(got[col] == doctest::Approx(value).epsilon(1e-12));
    }
  }
}

}  // namespace

TEST_CASE("reference dual coefficients of a full triangle") {
  const Eigen::Matrix3d C = cutmg::reference_dual();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(C(a, b) == doctest::Approx(a == b ? 3.0 : -1.0));
}

TEST_CASE("dual basis is biorthogonal on every cut element part") {
  for (const InterfaceSet& set :
       {InterfaceSet::vertical_line(cutmg::benchmark_line_offset()),
        InterfaceSet::circle({0.5, 0.5}, cutmg::benchmark_circle_r2())}) {
    TriMesh mesh(16);
    const auto cut = cutmg::classify_and_cut(mesh, set);
    const auto dual = cutmg::build_dual_basis(mesh, cut);
    REQUIRE(dual.parts.size() == 2 * cut.cuts.size());
    for (Index ci = 0; ci < Index(cut.cuts.size()); ++ci) {
      const auto& c = cut.cuts[ci];
      for (int side = 0; side < 2; ++side) {
        const auto& dp = side == 0 ? dual.positive(ci) : dual.negative(ci);
        REQUIRE_FALSE(dp.degenerate);
        const Eigen::Matrix3d M =
            part_mass_oracle(mesh, c.element, side == 0 ? c.parts_pos : c.parts_neg);
        // (psi_a, phi_b) = delta_ab (phi_a, 1) and d_a = (phi_a, 1).
        const Eigen::Matrix3d residual = dp.C * M - Eigen::Vector3d(dp.d).asDiagonal().toDenseMatrix();
        CHECK(residual.cwiseAbs().maxCoeff() <= 1e-12 * dp.d.maxCoeff());
        CHECK((dp.d - M.rowwise().sum()).cwiseAbs().maxCoeff() <= 1e-12 * dp.d.maxCoeff());
      }
    }
  }
}

TEST_CASE("transfer on an uncut pair is plain linear interpolation") {
  const Pair d(4, InterfaceSet::none());
  check_against_interpolation(d);
  const auto transfer = d.transfer();
  CHECK(transfer.flagged_rows.empty());
  const Vector ones = Vector::Ones(d.coarse.n_dofs());
  CHECK(((transfer.T * ones).array() - 1.0).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("transfer on the benchmark line equals blocked interpolation") {
  const Pair d(10, InterfaceSet::vertical_line(cutmg::benchmark_line_offset()));
  const auto transfer = d.transfer();
  CHECK(transfer.flagged_rows.empty());
  check_against_interpolation(d);

  // Entries live inside the diagonal subdomain blocks only.
  for (Index r = 0; r < d.fine.n_dofs(); ++r)
    for (SparseMatrix::InnerIterator it(transfer.T, r); it; ++it) {
      CHECK(d.fine.subdomain_of_dof(it.row()) == d.coarse.subdomain_of_dof(it.col()));
      CHECK(it.row() == r);
    }

  // Partition of unity and entry quantization.
  const Vector ones = Vector::Ones(d.coarse.n_dofs());
  CHECK(((transfer.T * ones).array() - 1.0).abs().maxCoeff() <= 1e-12);
  for (Index r = 0; r < transfer.T.outerSize(); ++r) {
    int nnz = 0;
    for (SparseMatrix::InnerIterator it(transfer.T, r); it; ++it) {
      ++nnz;
      const Scalar v = it.value();
      const bool quantized = std::abs(v - 1.0) <= 1e-12 || std::abs(v - 0.5) <= 1e-12;
      CHECK(quantized);
    }
    CHECK(nnz <= 3);
  }
}

TEST_CASE("transfer on the benchmark circle matches interpolation or flags rows") {
  const Pair d(16, InterfaceSet::circle({0.5, 0.5}, cutmg::benchmark_circle_r2()));
  check_against_interpolation(d);
}

TEST_CASE("transfer rejects non-nested meshes") {
  const auto set = InterfaceSet::none();
  TriMesh coarse(7), fine(10);
  const auto ccut = cutmg::classify_and_cut(coarse, set);
  const auto fcut = cutmg::classify_and_cut(fine, set);
  const EnrichedSpace cspace(coarse, ccut), fspace(fine, fcut);
  CHECK_THROWS_AS(cutmg::build_transfer(fine, fcut, fspace, coarse, ccut, cspace),
                  cutmg::ConfigError);
}

TEST_CASE("galerkin triple product with a real transfer matches dense") {
  const Pair d(8, InterfaceSet::vertical_line(cutmg::benchmark_line_offset()));
  const auto transfer = d.transfer();
  // A surrogate SPD fine matrix: graph Laplacian of T's pattern plus identity.
  SparseMatrix A(d.fine.n_dofs(), d.fine.n_dofs());
  std::vector<cutmg::Triplet> trips;
  for (Index r = 0; r < d.fine.n_dofs(); ++r) trips.emplace_back(r, r, 4.0 + 0.001 * Scalar(r));
  for (Index r = 0; r + 1 < d.fine.n_dofs(); ++r) {
    trips.emplace_back(r, r + 1, -1.0);
    trips.emplace_back(r + 1, r, -1.0);
  }
  A.setFromTriplets(trips.begin(), trips.end());
  const SparseMatrix got = cutmg::triple_product(transfer.T, A);
  const Matrix want = Matrix(transfer.T).transpose() * Matrix(A) * Matrix(transfer.T);
  const Scalar scale = want.cwiseAbs().maxCoeff();
  CHECK((Matrix(got) - want).cwiseAbs().maxCoeff() <= 1e-12 * scale);
}

TEST_CASE("full projection transfer satisfies its normal equations") {
  // Uncut pair: project the interpolant of a quadratic.
  {
    const Pair d(4, InterfaceSet::none());
    const auto lagrange = cutmg::build_lagrange_transfer(d.fine_mesh, d.fine_cut, d.fine,
                                                         d.coarse_mesh, d.coarse_cut, d.coarse);
    Vector v(d.coarse.n_dofs());
    for (Index i = 0; i < v.size(); ++i) {
      const Vec2 x = d.coarse_mesh.vertex(d.coarse.node_of_dof(i));
      v[i] = x.x() * x.x() + 2 * x.x() * x.y() - x.y() + 0.3;
    }
    const Vector z = lagrange.prolongate(v);
    const Vector residual = lagrange.B * v - lagrange.M * z;
    CHECK(residual.cwiseAbs().maxCoeff() <= 1e-12 * (lagrange.B * v).cwiseAbs().maxCoeff());
  }

  // Cut pair: the projection of any coarse function must agree with the
  // sparse biorthogonal transfer, because the coarse space is a subspace of
  // the fine one on nested meshes.
  {
    const Pair d(10, InterfaceSet::vertical_line(cutmg::benchmark_line_offset()));
    const auto transfer = d.transfer();
    const auto lagrange = cutmg::build_lagrange_transfer(d.fine_mesh, d.fine_cut, d.fine,
                                                         d.coarse_mesh, d.coarse_cut, d.coarse);
    Vector v(d.coarse.n_dofs());
    for (Index i = 0; i < v.size(); ++i) v[i] = std::sin(0.37 * Scalar(i)) + 0.2;
    const Vector via_projection = lagrange.prolongate(v);
    const Vector via_interpolation = transfer.T * v;
    CHECK((via_projection - via_interpolation).cwiseAbs().maxCoeff() <=
          1e-10 * via_interpolation.cwiseAbs().maxCoeff());
  }
}
