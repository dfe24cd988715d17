#include "cutmg/problem.hpp"

#include <cmath>
#include <numbers>

namespace cutmg {

namespace {

constexpr Scalar kSqrt2 = std::numbers::sqrt2_v<Scalar>;

// Smooth multi-bump function u(x,y) = P(x) Q(x) R(y) W(x,y) built from
// Gaussian bumps P, Q, R and the radial polynomial W = (1 - 3 r)^2 with
// r = (x-1/2)^2 + (y-1/2)^2.
struct Bump {
  static Scalar g(Scalar z) { return std::exp(-500.0 * z * z); }
  static Scalar dg(Scalar z) { return -1000.0 * z * g(z); }
  static Scalar ddg(Scalar z) { return (-1000.0 + 1.0e6 * z * z) * g(z); }

  static Scalar value(const Vec2& p) {
    const Scalar P = g(p.x() - 1.0 / 3.0) - 1.0;
    const Scalar Q = g(p.x() - 2.0 / 3.0) - 1.0;
    const Scalar R = g(p.y() - 0.5) - 1.0;
    return P * Q * R * W(p);
  }

  static Vec2 grad(const Vec2& p) {
    const Scalar P = g(p.x() - 1.0 / 3.0) - 1.0;
    const Scalar Q = g(p.x() - 2.0 / 3.0) - 1.0;
    const Scalar R = g(p.y() - 0.5) - 1.0;
    const Scalar dP = dg(p.x() - 1.0 / 3.0);
    const Scalar dQ = dg(p.x() - 2.0 / 3.0);
    const Scalar dR = dg(p.y() - 0.5);
    const Scalar F = P * Q;
    const Scalar dF = dP * Q + P * dQ;
    const Scalar w = W(p);
    return {dF * R * w + F * R * Wx(p), F * dR * w + F * R * Wy(p)};
  }

  static Scalar laplacian(const Vec2& p) {
    const Scalar P = g(p.x() - 1.0 / 3.0) - 1.0;
    const Scalar Q = g(p.x() - 2.0 / 3.0) - 1.0;
    const Scalar R = g(p.y() - 0.5) - 1.0;
    const Scalar dP = dg(p.x() - 1.0 / 3.0);
    const Scalar dQ = dg(p.x() - 2.0 / 3.0);
    const Scalar dR = dg(p.y() - 0.5);
    const Scalar ddP = ddg(p.x() - 1.0 / 3.0);
    const Scalar ddQ = ddg(p.x() - 2.0 / 3.0);
    const Scalar ddR = ddg(p.y() - 0.5);
    const Scalar F = P * Q;
    const Scalar dF = dP * Q + P * dQ;
    const Scalar ddF = ddP * Q + 2.0 * dP * dQ + P * ddQ;
    const Scalar w = W(p);
    const Scalar uxx = ddF * R * w + 2.0 * dF * R * Wx(p) + F * R * Wxx(p);
    const Scalar uyy = F * ddR * w + 2.0 * F * dR * Wy(p) + F * R * Wyy(p);
    return uxx + uyy;
  }

 private:
  static Scalar r(const Vec2& p) {
    const Scalar dx = p.x() - 0.5, dy = p.y() - 0.5;
    return dx * dx + dy * dy;
  }
  static Scalar W(const Vec2& p) {
    const Scalar s = 1.0 - 3.0 * r(p);
    return s * s;
  }
  static Scalar Wx(const Vec2& p) { return -12.0 * (p.x() - 0.5) * (1.0 - 3.0 * r(p)); }
  static Scalar Wy(const Vec2& p) { return -12.0 * (p.y() - 0.5) * (1.0 - 3.0 * r(p)); }
  static Scalar Wxx(const Vec2& p) {
    const Scalar dx = p.x() - 0.5;
    return -12.0 * (1.0 - 3.0 * r(p)) + 72.0 * dx * dx;
  }
  static Scalar Wyy(const Vec2& p) {
    const Scalar dy = p.y() - 0.5;
    return -12.0 * (1.0 - 3.0 * r(p)) + 72.0 * dy * dy;
  }
};

Problem smooth_bump_problem(std::string name, InterfaceSet interfaces) {
  Problem prob;
  prob.name = std::move(name);
  prob.interfaces = std::move(interfaces);
  prob.alpha.assign(prob.interfaces.n_subdomains(), 1.0);
  prob.exact = [](const Vec2& x, int) { return Bump::value(x); };
  prob.exact_grad = [](const Vec2& x, int) { return Bump::grad(x); };
  prob.rhs = [](const Vec2& x, int) { return -Bump::laplacian(x); };
  prob.load_degree = 5;
  return prob;
}

}  // namespace

Scalar benchmark_circle_r2() { return 3.0 - 2.0 * kSqrt2; }

Scalar benchmark_line_offset() { return 1.0 / kSqrt2; }

std::vector<Scalar> multi_interface_offsets(int k) {
  if (k < 1 || k > 10) throw ConfigError("multi_interface_offsets: k must be in 1..10");
  std::vector<Scalar> offsets;
  offsets.reserve(k);
  for (int i = 1; i <= k; ++i) {
    if (i <= 5)
      offsets.push_back(0.1 * (1.0 / kSqrt2 + i - 1));
    else
      offsets.push_back(0.1 * (i - 1.0 / kSqrt2));
  }
  return offsets;
}

Problem example1() {
  return smooth_bump_problem("example1",
                             InterfaceSet::vertical_line(benchmark_line_offset()));
}

Problem example1_fitted() { return smooth_bump_problem("example1-fitted", InterfaceSet::none()); }

Problem example1_multi(int k) {
  return smooth_bump_problem("multi", InterfaceSet::vertical_lines(multi_interface_offsets(k)));
}

Problem example2(Scalar alpha1, Scalar alpha2) {
  if (alpha1 <= 0 || alpha2 <= 0) throw ConfigError("example2: coefficients must be positive");
  Problem prob;
  prob.name = "example2";
  prob.interfaces = InterfaceSet::circle({0.5, 0.5}, benchmark_circle_r2());
  prob.alpha = {alpha1, alpha2};
  const Scalar r2 = benchmark_circle_r2();
  const Vec2 center{0.5, 0.5};
  prob.exact = [=](const Vec2& x, int sub) {
    const Scalar rho = (x - center).squaredNorm();
    return (sub == 0 ? alpha2 : alpha1) * (rho - r2);
  };
  prob.exact_grad = [=](const Vec2& x, int sub) {
    return Vec2(2.0 * (sub == 0 ? alpha2 : alpha1) * (x - center));
  };
  prob.rhs = [=](const Vec2&, int) { return -4.0 * alpha1 * alpha2; };
  return prob;
}

Problem example3(Scalar alpha2, Scalar alpha1) {
  if (alpha1 <= 0 || alpha2 <= 0) throw ConfigError("example3: coefficients must be positive");
  Problem prob;
  prob.name = "example3";
  prob.interfaces = InterfaceSet::circle({0.5, 0.5}, benchmark_circle_r2());
  prob.alpha = {alpha1, alpha2};
  const Scalar r2 = benchmark_circle_r2();
  const Vec2 center{0.5, 0.5};
  prob.exact = [=](const Vec2& x, int sub) {
    const Scalar rho = (x - center).squaredNorm();
    if (sub == 0) return rho / alpha1;
    return (rho - r2) / alpha2 + r2 / alpha1;
  };
  prob.exact_grad = [=](const Vec2& x, int sub) {
    return Vec2(2.0 / (sub == 0 ? alpha1 : alpha2) * (x - center));
  };
  prob.rhs = [=](const Vec2&, int) { return -4.0; };
  return prob;
}

}  // namespace cutmg
