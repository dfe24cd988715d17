#include "cutmg/assembly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "cutmg/p1.hpp"
#include "cutmg/quadrature.hpp"
#include "cutmg/sparse.hpp"

namespace cutmg {

namespace {

/// Per-side constant vectors spanning the kernel of the part stiffness.
Matrix constants_kernel() {
  Matrix kernel = Matrix::Zero(6, 2);
  kernel.block(0, 0, 3, 1).setOnes();
  kernel.block(3, 1, 3, 1).setOnes();
  return kernel;
}

/// Solves stiffness * W = rhs on the orthogonal complement of the per-side
/// constants (the two-dimensional kernel of the part stiffness).
Matrix deflated_solve(const Matrix& S, const Matrix& rhs) {
  Eigen::HouseholderQR<Matrix> qr(constants_kernel());
  const Matrix Q = qr.householderQ();
  const Matrix P = Q.rightCols(4);
  const Matrix Sp = (P.transpose() * S * P).eval();
  Eigen::LLT<Matrix> llt(Sp);
  if (llt.info() != Eigen::Success)
    throw SolverError("deflated_solve: deflated part stiffness is not SPD");
  return P * llt.solve((P.transpose() * rhs).eval());
}

}  // namespace

Variant parse_variant(const std::string& name) {
  if (name == "ev" || name == "n-ev") return Variant::ev;
  if (name == "lo" || name == "n-lo") return Variant::lo;
  if (name == "gp" || name == "n-gp") return Variant::gp;
  throw ConfigError("unknown variant '" + name + "' (expected ev, lo or gp)");
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::ev: return "ev";
    case Variant::lo: return "lo";
    case Variant::gp: return "gp";
  }
  return "?";
}

InterfaceWeights variant_weights(Variant variant, Scalar alpha_pos, Scalar alpha_neg,
                                 Scalar meas_pos, Scalar meas_neg) {
  InterfaceWeights w;
  if (variant == Variant::gp) {
    w.pos = alpha_neg / (alpha_pos + alpha_neg);
    w.neg = alpha_pos / (alpha_pos + alpha_neg);
  } else {
    const Scalar wp = meas_pos / alpha_pos;
    const Scalar wn = meas_neg / alpha_neg;
    w.pos = wp / (wp + wn);
    w.neg = wn / (wp + wn);
  }
  return w;
}

CutElementOperators cut_operators(const TriMesh& mesh, const CutElement& cut,
                                  const EnrichedSpace& space, const Problem& problem,
                                  const AssemblyOptions& options) {
  CutElementOperators ops;
  const auto pos_dofs = space.element_dofs(mesh, cut.element, cut.sub_pos);
  const auto neg_dofs = space.element_dofs(mesh, cut.element, cut.sub_neg);
  for (int k = 0; k < 3; ++k) {
    ops.dofs[k] = pos_dofs[k];
    ops.dofs[3 + k] = neg_dofs[k];
  }

  const auto x = mesh.triangle_coords(cut.element);
  const auto grad = basis_gradients(x);
  const Scalar a_pos = problem.coefficient(cut.sub_pos);
  const Scalar a_neg = problem.coefficient(cut.sub_neg);

  // Part stiffness: gradients are constant, so only the part measures enter.
  Matrix gram(3, 3);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) gram(j, k) = grad[j].dot(grad[k]);
  ops.stiffness = Matrix::Zero(6, 6);
  ops.stiffness.topLeftCorner(3, 3) = a_pos * cut.meas_pos * gram;
  ops.stiffness.bottomRightCorner(3, 3) = a_neg * cut.meas_neg * gram;

  ops.weights = variant_weights(options.variant, a_pos, a_neg, cut.meas_pos, cut.meas_neg);

  // Coefficient-weighted normal flux average; constant along the segment.
  ops.flux = Vector::Zero(6);
  for (int k = 0; k < 3; ++k) {
    ops.flux[k] = ops.weights.pos * a_pos * grad[k].dot(cut.normal);
    ops.flux[3 + k] = ops.weights.neg * a_neg * grad[k].dot(cut.normal);
  }

  // Segment integrals of the jump; a two-point Gauss rule is exact for the
  // quadratic penalty integrand.
  ops.jump_int = Vector::Zero(6);
  ops.penalty = Matrix::Zero(6, 6);
  for (const QuadPoint& q : segment_rule(cut.segment[0], cut.segment[1], 2)) {
    const auto lambda = basis_values(x, q.x);
    Vector jump(6);
    for (int k = 0; k < 3; ++k) {
      jump[k] = lambda[k];
      jump[3 + k] = -lambda[k];
    }
    ops.jump_int += q.w * jump;
    ops.penalty += q.w * jump * jump.transpose();
  }

  switch (options.variant) {
    case Variant::ev:
      ops.gamma = ev_penalty(ops, cut.segment_length);
      break;
    case Variant::lo:
      ops.gamma = cut.segment_length / (cut.meas_pos / a_pos + cut.meas_neg / a_neg);
      break;
    case Variant::gp:
      ops.gamma = options.gamma0 * 2.0 * a_pos * a_neg / (a_pos + a_neg) / mesh.h();
      break;
  }
  return ops;
}

Scalar ev_penalty(const CutElementOperators& ops, Scalar segment_length) {
  const Matrix B = segment_length * ops.flux * ops.flux.transpose();
  const Scalar lambda = dense_generalized_eig_max(B, ops.stiffness, constants_kernel());
  return 4.0 * lambda;
}

Matrix lo_lifting(const CutElementOperators& ops) {
  const Matrix rhs = -ops.flux * ops.jump_int.transpose();
  return deflated_solve(ops.stiffness, rhs);
}

namespace {

void scatter(const Matrix& local, const std::array<Index, 6>& dofs,
             std::vector<Triplet>& triplets) {
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k)
      if (local(j, k) != 0) triplets.emplace_back(dofs[j], dofs[k], local(j, k));
}

void assemble_load_part(const std::array<Vec2, 3>& x, const std::vector<SubTriangle>& part,
                        const std::array<Index, 3>& dofs, int sub, const Problem& problem,
                        Vector& b) {
  for (const SubTriangle& st : part) {
    for (const QuadPoint& q : triangle_rule(st.v[0], st.v[1], st.v[2], problem.load_degree)) {
      const auto lambda = basis_values(x, q.x);
      const Scalar f = problem.rhs(q.x, sub);
      for (int k = 0; k < 3; ++k) b[dofs[k]] += q.w * f * lambda[k];
    }
  }
}

/// Ghost penalty over the faces of cut elements: for each subdomain a cut
/// element intersects, every face shared with another element of that
/// subdomain's mesh patch receives a scaled jump penalty on the normal
/// derivative. Faces between two cut elements are visited once.
void assemble_ghost_penalty(const TriMesh& mesh, const CutDecomposition& cut,
                            const EnrichedSpace& space, const Problem& problem,
                            const AssemblyOptions& options, std::vector<Triplet>& triplets,
                            AssemblyStats& stats) {
  for (const CutElement& c : cut.cuts) {
    const Index t = c.element;
    const auto xt = mesh.triangle_coords(t);
    const auto gt = basis_gradients(xt);
    const auto vt = mesh.triangle_vertices(t);

    for (int e = 0; e < 3; ++e) {
      const Index tn = mesh.neighbor(t, e);
      if (tn < 0) continue;  // face on the domain boundary

      const Vec2 p0 = xt[e];
      const Vec2 p1 = xt[(e + 1) % 3];
      const Scalar len = (p1 - p0).norm();
      const Vec2 n = perp(p1 - p0) / len;

      const auto xn = mesh.triangle_coords(tn);
      const auto gn = basis_gradients(xn);
      const auto vn = mesh.triangle_vertices(tn);

      for (const int sub : {c.sub_pos, c.sub_neg}) {
        if (!cut.element_in_subdomain(tn, sub)) continue;  // face on the patch boundary
        // A face between two cut elements lies in both patches; keep the copy
        // seen from the lower element index.
        if (tn < t && cut.is_cut(tn)) continue;

        // Jump of the normal derivative across the face; vertices shared by
        // both elements accumulate both sides.
        std::unordered_map<Index, Scalar> jump;
        for (int k = 0; k < 3; ++k) jump[space.dof(sub, vt[k])] += gt[k].dot(n);
        for (int k = 0; k < 3; ++k) jump[space.dof(sub, vn[k])] -= gn[k].dot(n);

        const Scalar factor = options.eps_ghost * len * len * problem.coefficient(sub);
        for (const auto& [dj, js] : jump)
          for (const auto& [dk, ks] : jump)
            if (js * ks != 0) triplets.emplace_back(dj, dk, factor * js * ks);
        ++stats.n_ghost_faces;
      }
    }
  }
}

}  // namespace

System assemble_system(const TriMesh& mesh, const CutDecomposition& cut,
                       const EnrichedSpace& space, const Problem& problem,
                       const AssemblyOptions& options) {
  System sys;
  sys.b = Vector::Zero(space.n_dofs());
  std::vector<Triplet> triplets;
  triplets.reserve(24 * mesh.n_triangles());

  for (Index t = 0; t < mesh.n_triangles(); ++t) {
    const auto x = mesh.triangle_coords(t);

    if (!cut.is_cut(t)) {
      const int sub = cut.element_subdomain[t];
      const auto dofs = space.element_dofs(mesh, t, sub);
      const auto grad = basis_gradients(x);
      const Scalar coeff = problem.coefficient(sub) * mesh.triangle_area();
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          triplets.emplace_back(dofs[j], dofs[k], coeff * grad[j].dot(grad[k]));
      assemble_load_part(x, {SubTriangle{x}}, dofs, sub, problem, sys.b);
      continue;
    }

    const CutElement& c = cut.cut(t);
    CutElementOperators ops = cut_operators(mesh, c, space, problem, options);

    Matrix local = ops.stiffness - ops.jump_int * ops.flux.transpose() -
                   ops.flux * ops.jump_int.transpose() + ops.gamma * ops.penalty;
    if (options.variant == Variant::lo) {
      const Matrix lift = lo_lifting(ops);
      local += 2.0 * lift.transpose() * ops.stiffness * lift;
    }
    scatter(local, ops.dofs, triplets);

    const std::array<Index, 3> pos_dofs{ops.dofs[0], ops.dofs[1], ops.dofs[2]};
    const std::array<Index, 3> neg_dofs{ops.dofs[3], ops.dofs[4], ops.dofs[5]};
    assemble_load_part(x, c.parts_pos, pos_dofs, c.sub_pos, problem, sys.b);
    assemble_load_part(x, c.parts_neg, neg_dofs, c.sub_neg, problem, sys.b);

    ++sys.stats.n_cut;
    sys.stats.gamma_min = std::min(sys.stats.gamma_min, ops.gamma);
    sys.stats.gamma_max = std::max(sys.stats.gamma_max, ops.gamma);
  }

  if (options.variant == Variant::gp)
    assemble_ghost_penalty(mesh, cut, space, problem, options, triplets, sys.stats);

  sys.A.resize(space.n_dofs(), space.n_dofs());
  sys.A.setFromTriplets(triplets.begin(), triplets.end());
  sys.A.makeCompressed();
  return sys;
}

void apply_dirichlet(System& system, const TriMesh& mesh, const EnrichedSpace& space,
                     const Problem& problem) {
  const Index n = space.n_dofs();
  Vector lift = Vector::Zero(n);
  for (Index d = 0; d < n; ++d)
    if (space.is_boundary_dof(d))
      lift[d] = problem.exact(mesh.vertex(space.node_of_dof(d)), space.subdomain_of_dof(d));

  system.b -= system.A * lift;

  std::vector<Triplet> triplets;
  triplets.reserve(system.A.nonZeros());
  for (Index r = 0; r < system.A.outerSize(); ++r) {
    if (space.is_boundary_dof(r)) continue;
    for (SparseMatrix::InnerIterator it(system.A, r); it; ++it)
      if (!space.is_boundary_dof(it.col())) triplets.emplace_back(r, it.col(), it.value());
  }
  for (Index d = 0; d < n; ++d) {
    if (!space.is_boundary_dof(d)) continue;
    triplets.emplace_back(d, d, 1.0);
    system.b[d] = lift[d];
  }
  system.A.setZero();
  system.A.setFromTriplets(triplets.begin(), triplets.end());
  system.A.makeCompressed();
}

ErrorNorms compute_errors(const TriMesh& mesh, const CutDecomposition& cut,
                          const EnrichedSpace& space, const Problem& problem,
                          const Vector& u, Variant variant) {
  ErrorNorms norms;
  const Scalar h = mesh.h();
  Scalar l2 = 0, h1 = 0, jump2 = 0, flux2 = 0;

  auto part_error = [&](const std::array<Vec2, 3>& x, const std::vector<SubTriangle>& part,
                        const std::array<Index, 3>& dofs, int sub) {
    const auto grad = basis_gradients(x);
    Vec2 grad_h = Vec2::Zero();
    for (int k = 0; k < 3; ++k) grad_h += u[dofs[k]] * grad[k];
    for (const SubTriangle& st : part) {
      for (const QuadPoint& q : triangle_rule(st.v[0], st.v[1], st.v[2], 5)) {
        const auto lambda = basis_values(x, q.x);
        Scalar uh = 0;
        for (int k = 0; k < 3; ++k) uh += u[dofs[k]] * lambda[k];
        const Scalar e = problem.exact(q.x, sub) - uh;
        l2 += q.w * e * e;
        h1 += q.w * (problem.exact_grad(q.x, sub) - grad_h).squaredNorm();
      }
    }
  };

  for (Index t = 0; t < mesh.n_triangles(); ++t) {
    const auto x = mesh.triangle_coords(t);
    if (!cut.is_cut(t)) {
      const int sub = cut.element_subdomain[t];
      part_error(x, {SubTriangle{x}}, space.element_dofs(mesh, t, sub), sub);
      continue;
    }

    const CutElement& c = cut.cut(t);
    const auto pos_dofs = space.element_dofs(mesh, t, c.sub_pos);
    const auto neg_dofs = space.element_dofs(mesh, t, c.sub_neg);
    part_error(x, c.parts_pos, pos_dofs, c.sub_pos);
    part_error(x, c.parts_neg, neg_dofs, c.sub_neg);

    const Scalar a_pos = problem.coefficient(c.sub_pos);
    const Scalar a_neg = problem.coefficient(c.sub_neg);
    const InterfaceWeights w =
        variant_weights(variant, a_pos, a_neg, c.meas_pos, c.meas_neg);
    const auto grad = basis_gradients(x);
    Vec2 gh_pos = Vec2::Zero(), gh_neg = Vec2::Zero();
    for (int k = 0; k < 3; ++k) {
      gh_pos += u[pos_dofs[k]] * grad[k];
      gh_neg += u[neg_dofs[k]] * grad[k];
    }

    for (const QuadPoint& q : segment_rule(c.segment[0], c.segment[1], 3)) {
      const auto lambda = basis_values(x, q.x);
      Scalar uh_pos = 0, uh_neg = 0;
      for (int k = 0; k < 3; ++k) {
        uh_pos += u[pos_dofs[k]] * lambda[k];
        uh_neg += u[neg_dofs[k]] * lambda[k];
      }
      const Scalar e_jump = (problem.exact(q.x, c.sub_pos) - problem.exact(q.x, c.sub_neg)) -
                            (uh_pos - uh_neg);
      const Scalar e_flux =
          w.pos * (problem.exact_grad(q.x, c.sub_pos) - gh_pos).dot(c.normal) +
          w.neg * (problem.exact_grad(q.x, c.sub_neg) - gh_neg).dot(c.normal);
      jump2 += q.w * e_jump * e_jump / h;
      flux2 += q.w * e_flux * e_flux * h;
    }
  }

  norms.l2 = std::sqrt(l2);
  norms.broken_h1 = std::sqrt(h1);
  norms.jump = std::sqrt(jump2);
  norms.flux = std::sqrt(flux2);
  norms.energy = std::sqrt(h1 + jump2 + flux2);
  return norms;
}

}  // namespace cutmg
