#pragma once

#include <array>
#include <limits>

#include "cutmg/cut.hpp"
#include "cutmg/mesh.hpp"
#include "cutmg/problem.hpp"
#include "cutmg/space.hpp"
#include "cutmg/types.hpp"

namespace cutmg {

/// Interface stabilization variants:
///   ev: penalty from a local generalized eigenvalue problem
///   lo: lifting-operator stabilization with a measure-scaled penalty
///   gp: ghost penalty on faces of cut elements with a coefficient-scaled
///       interface penalty
enum class Variant { ev, lo, gp };

Variant parse_variant(const std::string& name);
std::string variant_name(Variant v);

struct AssemblyOptions {
  Variant variant = Variant::ev;
  Scalar gamma0 = 10.0;     // gp interface penalty scale
  Scalar eps_ghost = 0.1;   // gp face penalty scale
};

/// Averaging weights (beta_pos, beta_neg) of a cut element. The ev and lo
/// variants weight by part measure over coefficient; gp weights by the
/// opposite coefficient so the average leans on the better-conditioned side.
struct InterfaceWeights {
  Scalar pos = 0.5;
  Scalar neg = 0.5;
};

InterfaceWeights variant_weights(Variant variant, Scalar alpha_pos, Scalar alpha_neg,
                                 Scalar meas_pos, Scalar meas_neg);

/// Local interface operators of one cut element on its six doubled P1 dofs
/// (positive-side dofs first). All segment integrals are exact for the
/// piecewise-linear integrands involved.
struct CutElementOperators {
  std::array<Index, 6> dofs;
  Matrix stiffness;   // 6x6 part stiffness sum_i alpha_i int_{K_i} grad.grad
  Vector flux;        // {alpha grad_n phi} along the segment (constant)
  Vector jump_int;    // int_seg [[phi]]
  Matrix penalty;     // int_seg [[phi]][[phi]]
  InterfaceWeights weights;
  Scalar gamma = 0;   // interface penalty coefficient of the variant
};

CutElementOperators cut_operators(const TriMesh& mesh, const CutElement& cut,
                                  const EnrichedSpace& space, const Problem& problem,
                                  const AssemblyOptions& options);

/// Penalty coefficient of the ev variant: four times the largest eigenvalue
/// of the local flux/stiffness pencil, deflated by the per-side constants.
Scalar ev_penalty(const CutElementOperators& ops, Scalar segment_length);

/// Local lifting matrix W of the lo variant: column k holds the coefficients
/// of the lifted trial function of dof k, satisfying
/// stiffness * W = -flux * jump_int^T on the complement of the constants.
Matrix lo_lifting(const CutElementOperators& ops);

struct AssemblyStats {
  Index n_cut = 0;
  Index n_ghost_faces = 0;  // counted per (face, subdomain) pair
  Scalar gamma_min = std::numeric_limits<Scalar>::infinity();
  Scalar gamma_max = 0;
};

struct System {
  SparseMatrix A;
  Vector b;
  AssemblyStats stats;
};

/// Assembles the stabilized bilinear form and load vector of the problem on
/// the enriched space. The result is symmetric; Dirichlet conditions are not
/// yet applied.
System assemble_system(const TriMesh& mesh, const CutDecomposition& cut,
                       const EnrichedSpace& space, const Problem& problem,
                       const AssemblyOptions& options);

/// Eliminates boundary dofs symmetrically: their rows and columns are
/// cleared, the diagonal set to one, interior loads shifted by the boundary
/// lift, and the boundary entries of b set to the Dirichlet values (the exact
/// solution branch of the dof's subdomain). Keeps the matrix SPD.
void apply_dirichlet(System& system, const TriMesh& mesh, const EnrichedSpace& space,
                     const Problem& problem);

/// Discretization error norms of a solution vector.
struct ErrorNorms {
  Scalar l2 = 0;
  Scalar energy = 0;      // broken H1 + scaled interface jump and flux terms
  Scalar broken_h1 = 0;
  Scalar jump = 0;        // sum_K h^{-1} ||[[e]]||^2, square-rooted
  Scalar flux = 0;        // sum_K h ||{grad_n e}||^2, square-rooted
};

ErrorNorms compute_errors(const TriMesh& mesh, const CutDecomposition& cut,
                          const EnrichedSpace& space, const Problem& problem,
                          const Vector& u, Variant variant);

}  // namespace cutmg
