#include "cutmg/quadrature.hpp"

#include <cmath>

namespace cutmg {

namespace {

struct BaryPoint {
  Scalar l0, l1, l2, w;
};

// Edge-midpoint rule, exact for quadratics.
const std::array<BaryPoint, 3> kDegree2 = {{
    {0.5, 0.5, 0.0, 1.0 / 3.0},
    {0.0, 0.5, 0.5, 1.0 / 3.0},
    {0.5, 0.0, 0.5, 1.0 / 3.0},
}};

// Seven-point rule, exact for quintics.
std::array<BaryPoint, 7> degree5_rule() {
  const Scalar s15 = std::sqrt(15.0);
  const Scalar a = (6.0 - s15) / 21.0;
  const Scalar b = (6.0 + s15) / 21.0;
  const Scalar wa = (155.0 - s15) / 1200.0;
  const Scalar wb = (155.0 + s15) / 1200.0;
  return {{
      {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0},
      {a, a, 1.0 - 2.0 * a, wa},
      {a, 1.0 - 2.0 * a, a, wa},
      {1.0 - 2.0 * a, a, a, wa},
      {b, b, 1.0 - 2.0 * b, wb},
      {b, 1.0 - 2.0 * b, b, wb},
      {1.0 - 2.0 * b, b, b, wb},
  }};
}

}  // namespace

std::vector<QuadPoint> triangle_rule(const Vec2& a, const Vec2& b, const Vec2& c, int degree) {
  const Scalar area = std::abs(signed_area(a, b, c));
  std::vector<QuadPoint> pts;
  auto push = [&](const BaryPoint& p) {
    pts.push_back({p.l0 * a + p.l1 * b + p.l2 * c, p.w * area});
  };
  if (degree <= 2) {
    for (const auto& p : kDegree2) push(p);
  } else if (degree <= 5) {
    for (const auto& p : degree5_rule()) push(p);
  } else {
    throw ConfigError("triangle_rule: unsupported quadrature degree " + std::to_string(degree));
  }
  return pts;
}

std::vector<QuadPoint> segment_rule(const Vec2& a, const Vec2& b, int n) {
  const Scalar len = (b - a).norm();
  std::vector<QuadPoint> pts;
  auto push = [&](Scalar t, Scalar w) { pts.push_back({a + t * (b - a), w * len}); };
  if (n == 2) {
    const Scalar d = 0.5 / std::sqrt(3.0);
    push(0.5 - d, 0.5);
    push(0.5 + d, 0.5);
  } else if (n == 3) {
    const Scalar d = 0.5 * std::sqrt(3.0 / 5.0);
    push(0.5 - d, 5.0 / 18.0);
    push(0.5, 8.0 / 18.0);
    push(0.5 + d, 5.0 / 18.0);
  } else {
    throw ConfigError("segment_rule: unsupported point count " + std::to_string(n));
  }
  return pts;
}

}  // namespace cutmg
