#pragma once

#include <array>

#include "cutmg/quadrature.hpp"
#include "cutmg/types.hpp"

namespace cutmg {

/// Rotates a vector by 90 degrees counter-clockwise.
inline Vec2 perp(const Vec2& v) { return {-v.y(), v.x()}; }

/// Constant gradients of the three P1 basis functions of a triangle.
inline std::array<Vec2, 3> basis_gradients(const std::array<Vec2, 3>& x) {
  const Scalar a2 = 2.0 * signed_area(x[0], x[1], x[2]);
  return {perp(x[2] - x[1]) / a2, perp(x[0] - x[2]) / a2, perp(x[1] - x[0]) / a2};
}

/// Barycentric coordinates of p in the triangle x. They extend the P1 basis
/// functions linearly outside the triangle, so p need not lie inside.
inline std::array<Scalar, 3> basis_values(const std::array<Vec2, 3>& x, const Vec2& p) {
  const Scalar a = signed_area(x[0], x[1], x[2]);
  return {signed_area(p, x[1], x[2]) / a, signed_area(x[0], p, x[2]) / a,
          signed_area(x[0], x[1], p) / a};
}

}  // namespace cutmg
