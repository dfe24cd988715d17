#include "cutmg/transfer.hpp"

#include <cmath>
#include <cstdlib>

#include "cutmg/p1.hpp"
#include "cutmg/quadrature.hpp"
#include "cutmg/sparse.hpp"

namespace cutmg {

namespace {

using Eigen::Matrix3d;
using Eigen::Vector3d;

/// Mass matrix M(a, b) = (phi_a, phi_b) and lumped masses d = M 1 of the P1
/// basis of the element with coordinates x, integrated over the given
/// sub-triangles. The degree-2 rule is exact for these quadratics.
void part_mass(const std::array<Vec2, 3>& x, const std::vector<SubTriangle>& tris,
               Matrix3d& M, Vector3d& d) {
  M.setZero();
  for (const SubTriangle& s : tris)
    for (const QuadPoint& q : triangle_rule(s.v[0], s.v[1], s.v[2], 2)) {
      const auto lam = basis_values(x, q.x);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) M(a, b) += q.w * lam[a] * lam[b];
    }
  d = M.rowwise().sum();
}

/// Solves C M = diag(d) with iterative refinement, so the biorthogonality
/// residual stays near rounding level even on badly shaped parts. Returns
/// false when the refined residual is still large (degenerate part).
bool dual_coefficients(const Matrix3d& M, const Vector3d& d, Matrix3d& C) {
  const Matrix3d D = d.asDiagonal();
  Eigen::PartialPivLU<Matrix3d> lu(M);
  C = lu.solve(D).transpose();
  for (int pass = 0; pass < 2; ++pass)
    C += lu.solve((D - C * M).transpose()).transpose();
  const Scalar residual = (C * M - D).norm();
  return std::isfinite(residual) && residual <= 1e-10 * d.maxCoeff();
}

/// Calls fn(sub, tris, whole_element) for every part of element t, where tris
/// sub-triangulates the part. Uncut elements have a single full part.
template <class Fn>
void for_each_part(const TriMesh& mesh, const CutDecomposition& cut, Index t, Fn&& fn) {
  if (!cut.is_cut(t)) {
    const auto x = mesh.triangle_coords(t);
    fn(cut.element_subdomain[t], std::vector<SubTriangle>{SubTriangle{x}}, true);
    return;
  }
  const CutElement& c = cut.cut(t);
  fn(c.sub_pos, c.parts_pos, false);
  fn(c.sub_neg, c.parts_neg, false);
}

/// Cross integrals G(b, q) = (phi_b, Phi_q) of the fine P1 basis (coords xf)
/// against the coarse P1 basis (coords xc) over the part sub-triangles.
Matrix3d cross_mass(const std::array<Vec2, 3>& xf, const std::array<Vec2, 3>& xc,
                    const std::vector<SubTriangle>& tris) {
  Matrix3d G = Matrix3d::Zero();
  for (const SubTriangle& s : tris)
    for (const QuadPoint& q : triangle_rule(s.v[0], s.v[1], s.v[2], 2)) {
      const auto lf = basis_values(xf, q.x);
      const auto lc = basis_values(xc, q.x);
      for (int b = 0; b < 3; ++b)
        for (int qi = 0; qi < 3; ++qi) G(b, qi) += q.w * lf[b] * lc[qi];
    }
  return G;
}

void require_nested(const TriMesh& fine_mesh, const TriMesh& coarse_mesh,
                    const CutDecomposition& fine_cut, const CutDecomposition& coarse_cut) {
  if (fine_mesh.n() != 2 * coarse_mesh.n())
    throw ConfigError("transfer requires the fine mesh to refine the coarse mesh");
  if (fine_cut.n_subdomains != coarse_cut.n_subdomains)
    throw ConfigError("transfer requires the same interfaces on both levels");
}

}  // namespace

Eigen::Matrix3d reference_dual() {
  Matrix3d C;
  C << 3, -1, -1, -1, 3, -1, -1, -1, 3;
  return C;
}

DualBasis build_dual_basis(const TriMesh& mesh, const CutDecomposition& cut) {
  DualBasis basis;
  basis.parts.resize(2 * cut.cuts.size());
  const Scalar meas_tol = 1e-14 * mesh.triangle_area();

  for (std::size_t ci = 0; ci < cut.cuts.size(); ++ci) {
    const CutElement& c = cut.cuts[ci];
    const auto x = mesh.triangle_coords(c.element);
    for (int side = 0; side < 2; ++side) {
      DualPart& part = basis.parts[2 * ci + side];
      Matrix3d M;
      part_mass(x, side == 0 ? c.parts_pos : c.parts_neg, M, part.d);
      part.degenerate =
          part.d.sum() < meas_tol || !dual_coefficients(M, part.d, part.C);
    }
  }
  return basis;
}

Transfer build_transfer(const TriMesh& fine_mesh, const CutDecomposition& fine_cut,
                        const EnrichedSpace& fine_space, const TriMesh& coarse_mesh,
                        const CutDecomposition& coarse_cut, const EnrichedSpace& coarse_space,
                        const DualBasis& dual) {
  require_nested(fine_mesh, coarse_mesh, fine_cut, coarse_cut);

  const Index n_fine = fine_space.n_dofs();
  Vector D = Vector::Zero(n_fine);
  Vector uncovered = Vector::Zero(n_fine);
  std::vector<Triplet> triplets;
  const Matrix3d C_ref = reference_dual();

  for (Index t = 0; t < fine_mesh.n_triangles(); ++t) {
    const auto xf = fine_mesh.triangle_coords(t);
    const auto vf = fine_mesh.triangle_vertices(t);
    const Index parent = fine_mesh.parent(t);
    const auto xc = coarse_mesh.triangle_coords(parent);
    const auto vc = coarse_mesh.triangle_vertices(parent);

    int side = 0;
    for_each_part(fine_mesh, fine_cut, t,
                  [&](int sub, const std::vector<SubTriangle>& tris, bool whole) {
      const DualPart* dp =
          whole ? nullptr : &dual.parts[2 * fine_cut.cut_of_element[t] + side++];

      std::array<Index, 3> rows;
      for (int a = 0; a < 3; ++a) rows[a] = fine_space.dof(sub, vf[a]);

      if (dp && dp->degenerate) {
        // Too small to carry a dual basis; its mass counts as uncovered so
        // affected rows are either flagged or dominated by healthy parts.
        for (int a = 0; a < 3; ++a) uncovered[rows[a]] += dp->d[a];
        return;
      }

      Vector3d d;
      if (whole) {
        d.setConstant(fine_mesh.triangle_area() / 3.0);
      } else {
        d = dp->d;
      }
      const Matrix3d contrib = (whole ? C_ref : dp->C) * cross_mass(xf, xc, tris);

      for (int a = 0; a < 3; ++a) D[rows[a]] += d[a];
      for (int q = 0; q < 3; ++q) {
        const Index col = coarse_space.dof(sub, vc[q]);
        for (int a = 0; a < 3; ++a) {
          if (col >= 0)
            triplets.emplace_back(rows[a], col, contrib(a, q));
          else
            uncovered[rows[a]] += std::abs(contrib(a, q));
        }
      }
    });
  }

  Transfer out;
  const Scalar meas_tol = 1e-14 * fine_mesh.triangle_area();
  std::vector<char> flagged(n_fine, 0);
  for (Index r = 0; r < n_fine; ++r)
    if (D[r] < meas_tol || uncovered[r] > 1e-12 * std::max(D[r], meas_tol)) {
      flagged[r] = 1;
      out.flagged_rows.push_back(r);
    }

  std::vector<Triplet> scaled;
  scaled.reserve(triplets.size());
  for (const Triplet& tr : triplets)
    if (!flagged[tr.row()]) scaled.emplace_back(tr.row(), tr.col(), tr.value() / D[tr.row()]);

  out.T.resize(n_fine, coarse_space.n_dofs());
  out.T.setFromTriplets(scaled.begin(), scaled.end());
  // On a nested pair every true entry is a barycentric value of a coarse node
  // at a fine node (0.5 or 1 here), so entries far below that are cancellation
  // noise from dual solves on thin parts, not data.
  out.T.prune(Scalar(1), Scalar(1e-9));
  out.T.makeCompressed();
  return out;
}

Transfer build_transfer(const TriMesh& fine_mesh, const CutDecomposition& fine_cut,
                        const EnrichedSpace& fine_space, const TriMesh& coarse_mesh,
                        const CutDecomposition& coarse_cut, const EnrichedSpace& coarse_space) {
  return build_transfer(fine_mesh, fine_cut, fine_space, coarse_mesh, coarse_cut,
                        coarse_space, build_dual_basis(fine_mesh, fine_cut));
}

Vector LagrangeTransfer::prolongate(const Vector& coarse) const {
  DirectSolver mass(M);
  return mass.solve(B * coarse);
}

LagrangeTransfer build_lagrange_transfer(const TriMesh& fine_mesh,
                                         const CutDecomposition& fine_cut,
                                         const EnrichedSpace& fine_space,
                                         const TriMesh& coarse_mesh,
                                         const CutDecomposition& coarse_cut,
                                         const EnrichedSpace& coarse_space) {
  require_nested(fine_mesh, coarse_mesh, fine_cut, coarse_cut);

  const Index n_fine = fine_space.n_dofs();
  std::vector<Triplet> mass_triplets, cross_triplets;

  for (Index t = 0; t < fine_mesh.n_triangles(); ++t) {
    const auto xf = fine_mesh.triangle_coords(t);
    const auto vf = fine_mesh.triangle_vertices(t);
    const Index parent = fine_mesh.parent(t);
    const auto xc = coarse_mesh.triangle_coords(parent);
    const auto vc = coarse_mesh.triangle_vertices(parent);

    for_each_part(fine_mesh, fine_cut, t,
                  [&](int sub, const std::vector<SubTriangle>& tris, bool) {
      std::array<Index, 3> rows;
      for (int a = 0; a < 3; ++a) rows[a] = fine_space.dof(sub, vf[a]);

      Matrix3d M_part;
      Vector3d d;
      part_mass(xf, tris, M_part, d);
      const Matrix3d G = cross_mass(xf, xc, tris);

      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          mass_triplets.emplace_back(rows[a], rows[b], M_part(a, b));
      for (int q = 0; q < 3; ++q) {
        const Index col = coarse_space.dof(sub, vc[q]);
        if (col < 0) continue;
        for (int a = 0; a < 3; ++a) cross_triplets.emplace_back(rows[a], col, G(a, q));
      }
    });
  }

  LagrangeTransfer out;
  out.M.resize(n_fine, n_fine);
  out.M.setFromTriplets(mass_triplets.begin(), mass_triplets.end());
  out.M.makeCompressed();
  out.B.resize(n_fine, coarse_space.n_dofs());
  out.B.setFromTriplets(cross_triplets.begin(), cross_triplets.end());
  out.B.makeCompressed();
  return out;
}

}  // namespace cutmg
