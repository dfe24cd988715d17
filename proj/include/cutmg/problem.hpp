#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cutmg/levelset.hpp"
#include "cutmg/types.hpp"

namespace cutmg {

/// An elliptic interface problem -div(alpha grad u) = f on the unit square
/// with Dirichlet data taken from the exact solution. Field functions take a
/// point plus the subdomain index, so piecewise-defined solutions evaluate
/// the branch of the requested subdomain even slightly across the interface
/// (as nodal interpolation of enriched dofs requires).
struct Problem {
  std::string name;
  InterfaceSet interfaces;
  std::vector<Scalar> alpha;  // one diffusion coefficient per subdomain

  std::function<Scalar(const Vec2&, int)> exact;
  std::function<Vec2(const Vec2&, int)> exact_grad;
  std::function<Scalar(const Vec2&, int)> rhs;

  /// Quadrature degree of the load vector (the smooth-bump problem needs a
  /// degree-5 rule; the quadratic solutions are fine with the default).
  int load_degree = 2;

  Scalar coefficient(int sub) const { return alpha.at(sub); }
};

/// Squared radius of the circular interface used by the benchmark problems:
/// r0 = sqrt(2) - 1 around (0.5, 0.5).
Scalar benchmark_circle_r2();

/// Offset of the vertical-line interface of the smooth-bump problem, 1/sqrt(2).
Scalar benchmark_line_offset();

/// Offsets of the parallel-interface family; k in 1..10 lines.
std::vector<Scalar> multi_interface_offsets(int k);

/// Smooth multi-bump solution with a continuous coefficient (alpha = 1) and a
/// vertical-line interface at x = 1/sqrt(2).
Problem example1();

/// Same smooth solution without any interface: a fitted P1 discretization on
/// the identical background mesh.
Problem example1_fitted();

/// Same smooth solution and coefficient split across k parallel vertical
/// interfaces (stripe subdomains).
Problem example1_multi(int k);

/// Piecewise-quadratic solution over the circular interface; alpha1 inside,
/// alpha2 outside, discontinuous normal-derivative scaling balanced so the
/// exact solution stays continuous with continuous flux.
Problem example2(Scalar alpha1, Scalar alpha2 = 1.0);

/// Second piecewise-quadratic family over the same circle (alpha1 inside).
Problem example3(Scalar alpha2, Scalar alpha1 = 1.0);

}  // namespace cutmg
