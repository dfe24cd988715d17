#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cutmg/types.hpp"

namespace cutmg {

using LinearOperator = std::function<Vector(const Vector&)>;

/// Convergence record of an iterative solve.
struct SolveReport {
  int iterations = 0;
  std::vector<Scalar> residuals;     // relative energy-norm residual per iteration
  std::vector<Scalar> energy_diffs;  // ||u_k - u_{k-1}||_A per iteration
  std::optional<Scalar> rho_star;    // ratio of the last two energy differences
  std::optional<Scalar> kappa;       // condition estimate, filled by callers
  double seconds = 0;
};

struct SolveResult {
  Vector u;
  SolveReport report;
};

/// Asymptotic contraction estimate: the ratio of the last two energy-norm
/// step differences. Absent when fewer than two steps were taken or the
/// denominator underflows.
std::optional<Scalar> estimate_rho_star(const std::vector<Scalar>& energy_diffs);

}  // namespace cutmg
