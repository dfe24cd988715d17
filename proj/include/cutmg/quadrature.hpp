#pragma once

#include <array>
#include <vector>

#include "cutmg/types.hpp"

namespace cutmg {

/// Quadrature point in physical coordinates with an absolute weight
/// (weights sum to the measure of the integration domain).
struct QuadPoint {
  Vec2 x;
  Scalar w;
};

/// Quadrature rule over the triangle (a, b, c), exact for polynomials up to
/// the requested degree. Supported degrees: 2 (3-point edge-midpoint rule)
/// and 5 (7-point rule). Degenerate (zero-area) triangles yield zero weights.
std::vector<QuadPoint> triangle_rule(const Vec2& a, const Vec2& b, const Vec2& c, int degree);

/// Gauss rule over the segment [a, b]; n = 2 (exact to degree 3) or
/// n = 3 (exact to degree 5).
std::vector<QuadPoint> segment_rule(const Vec2& a, const Vec2& b, int n);

/// Signed area of a triangle (positive when counter-clockwise).
inline Scalar signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

}  // namespace cutmg
