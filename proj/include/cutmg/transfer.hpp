#pragma once

#include <Eigen/Dense>

#include <vector>

#include "cutmg/cut.hpp"
#include "cutmg/mesh.hpp"
#include "cutmg/space.hpp"
#include "cutmg/types.hpp"

namespace cutmg {

/// Dual-basis coefficients on one element part. The dual functions
/// psi_a = sum_b C(a, b) phi_b are biorthogonal to the P1 basis on the part:
/// (psi_a, phi_b) = delta_ab (phi_a, 1). d holds the lumped masses (phi_a, 1).
struct DualPart {
  Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
  Eigen::Vector3d d = Eigen::Vector3d::Zero();
  bool degenerate = false;  // part too small to invert its mass reliably
};

/// Dual coefficients for both parts of every cut element, stored in cut
/// order with the positive side first. Uncut elements all share
/// reference_dual() and are not stored.
struct DualBasis {
  std::vector<DualPart> parts;
  const DualPart& positive(Index cut_index) const { return parts[2 * cut_index]; }
  const DualPart& negative(Index cut_index) const { return parts[2 * cut_index + 1]; }
};

/// Dual coefficients of a full triangle: diagonal 3, off-diagonal -1.
Eigen::Matrix3d reference_dual();

DualBasis build_dual_basis(const TriMesh& mesh, const CutDecomposition& cut);

/// Prolongation from the enriched space on a mesh to the enriched space on
/// its uniform refinement. Rows of fine dofs whose support measure is
/// negligible, or whose node lacks a coarse counterpart in its subdomain,
/// are zeroed and listed in flagged_rows.
struct Transfer {
  SparseMatrix T;  // n_fine_dofs x n_coarse_dofs
  std::vector<Index> flagged_rows;
};

/// Builds the prolongation with a diagonal fine-side mass: per fine element
/// part, cross integrals of the dual basis against the parent element's P1
/// basis accumulate into B, the lumped masses into D, and T = D^{-1} B.
/// Requires fine_mesh.n() == 2 * coarse_mesh.n() and matching interfaces.
Transfer build_transfer(const TriMesh& fine_mesh, const CutDecomposition& fine_cut,
                        const EnrichedSpace& fine_space, const TriMesh& coarse_mesh,
                        const CutDecomposition& coarse_cut, const EnrichedSpace& coarse_space,
                        const DualBasis& dual);

/// Convenience overload building the dual basis internally.
Transfer build_transfer(const TriMesh& fine_mesh, const CutDecomposition& fine_cut,
                        const EnrichedSpace& fine_space, const TriMesh& coarse_mesh,
                        const CutDecomposition& coarse_cut, const EnrichedSpace& coarse_space);

/// Full L2 projection onto the fine space: prolongation solves with the fine
/// mass matrix on every application. Reference for tests; not used by the
/// multigrid hierarchy.
struct LagrangeTransfer {
  SparseMatrix B;  // fine-by-coarse cross mass
  SparseMatrix M;  // fine mass, block diagonal across subdomains
  Vector prolongate(const Vector& coarse) const;
};

LagrangeTransfer build_lagrange_transfer(const TriMesh& fine_mesh,
                                         const CutDecomposition& fine_cut,
                                         const EnrichedSpace& fine_space,
                                         const TriMesh& coarse_mesh,
                                         const CutDecomposition& coarse_cut,
                                         const EnrichedSpace& coarse_space);

}  // namespace cutmg
