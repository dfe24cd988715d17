#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cutmg/problem.hpp"

using cutmg::Problem;
using cutmg::Scalar;
using cutmg::Vec2;

namespace {

// -div(alpha grad u) at x in subdomain sub by central differences of the
// exact solution branch; independent of the stored rhs closure.
Scalar fd_rhs(const Problem& p, const Vec2& x, int sub, Scalar h = 1e-5) {
  auto u = [&](Scalar dx, Scalar dy) { return p.exact(Vec2{x.x() + dx, x.y() + dy}, sub); };
  const Scalar lap =
      (u(h, 0) + u(-h, 0) + u(0, h) + u(0, -h) - 4.0 * u(0, 0)) / (h * h);
  return -p.coefficient(sub) * lap;
}

Vec2 fd_grad(const Problem& p, const Vec2& x, int sub, Scalar h = 1e-6) {
  auto u = [&](Scalar dx, Scalar dy) { return p.exact(Vec2{x.x() + dx, x.y() + dy}, sub); };
  return {(u(h, 0) - u(-h, 0)) / (2 * h), (u(0, h) - u(0, -h)) / (2 * h)};
}

void check_fields(const Problem& p, const std::vector<std::pair<Vec2, int>>& samples,
                  Scalar rhs_rel_tol) {
  for (const auto& [x, sub] : samples) {
    CAPTURE(x.x());
    CAPTURE(x.y());
    CAPTURE(sub);
    const Scalar f = p.rhs(x, sub);
    const Scalar f_fd = fd_rhs(p, x, sub);
    const Scalar scale = std::max(std::abs(f), Scalar(1));
    CHECK(std::abs(f - f_fd) <= rhs_rel_tol * scale);
    const Vec2 g = p.exact_grad(x, sub);
    const Vec2 g_fd = fd_grad(p, x, sub);
    const Scalar gscale = std::max(g.norm(), Scalar(1));
    CHECK((g - g_fd).norm() <= 1e-6 * gscale);
  }
}

}  // namespace

TEST_CASE("benchmark geometry constants") {
  CHECK(cutmg::benchmark_circle_r2() ==
        doctest::Approx(3.0 - 2.0 * std::numbers::sqrt2).epsilon(1e-15));
  CHECK(cutmg::benchmark_line_offset() == doctest::Approx(1.0 / std::numbers::sqrt2));
  const Scalar r0 = std::sqrt(cutmg::benchmark_circle_r2());
  CHECK(0.5 + r0 < 1.0);  // the circle stays inside the unit square
}

TEST_CASE("smooth bump problem on the vertical line") {
  const Problem p = cutmg::example1();
  CHECK(p.interfaces.n_interfaces() == 1);
  CHECK(p.alpha == std::vector<Scalar>{1.0, 1.0});
  CHECK(p.load_degree == 5);
  check_fields(p,
               {{{0.2, 0.3}, 0},
                {{0.45, 0.55}, 0},
                {{0.65, 0.5}, 0},
                {{0.75, 0.25}, 1},
                {{0.9, 0.8}, 1}},
               1e-4);
  // The solution branch is the same smooth function on both sides.
  const Vec2 x{0.5, 0.37};
  CHECK(p.exact(x, 0) == doctest::Approx(p.exact(x, 1)).epsilon(1e-15));
}

TEST_CASE("fitted variant shares the fields of the unfitted problem") {
  const Problem p = cutmg::example1();
  const Problem fem = cutmg::example1_fitted();
  CHECK(fem.interfaces.n_interfaces() == 0);
  for (const Vec2& x : {Vec2{0.3, 0.3}, Vec2{0.8, 0.6}}) {
    CHECK(fem.exact(x, 0) == doctest::Approx(p.exact(x, 0)).epsilon(1e-15));
    CHECK(fem.rhs(x, 0) == doctest::Approx(p.rhs(x, 0)).epsilon(1e-15));
  }
}

TEST_CASE("multi-interface offsets are sorted, interior, and well separated") {
  for (int k : {1, 2, 4, 6, 8, 10}) {
    const auto offsets = cutmg::multi_interface_offsets(k);
    REQUIRE(static_cast<int>(offsets.size()) == k);
    for (int i = 0; i < k; ++i) {
      CHECK(offsets[i] > 0.0);
      CHECK(offsets[i] < 1.0);
      if (i > 0) CHECK(offsets[i] - offsets[i - 1] > 0.05);
    }
  }
  CHECK(cutmg::multi_interface_offsets(1)[0] == doctest::Approx(0.1 / std::numbers::sqrt2));
  CHECK(cutmg::multi_interface_offsets(10)[9] ==
        doctest::Approx(0.1 * (10 - 1.0 / std::numbers::sqrt2)));
  CHECK_THROWS_AS(cutmg::multi_interface_offsets(0), cutmg::ConfigError);
  CHECK_THROWS_AS(cutmg::multi_interface_offsets(11), cutmg::ConfigError);

  const Problem p = cutmg::example1_multi(3);
  CHECK(p.interfaces.n_interfaces() == 3);
  CHECK(p.alpha.size() == 4);
  check_fields(p, {{{0.05, 0.4}, 0}, {{0.12, 0.6}, 1}, {{0.5, 0.5}, 3}}, 1e-4);
}

TEST_CASE("quadratic circle problems are continuous with continuous flux") {
  const Scalar r2 = cutmg::benchmark_circle_r2();
  const Vec2 center{0.5, 0.5};
  const Scalar r0 = std::sqrt(r2);

  // Finite differences only with moderate coefficients; the extreme ratios
  // make the second-difference quotient cancel catastrophically.
  for (const Problem& p : {cutmg::example2(1e-1), cutmg::example3(10.0)})
    check_fields(p, {{{0.5, 0.6}, 0}, {{0.4, 0.45}, 0}, {{0.9, 0.9}, 1}, {{0.1, 0.5}, 1}}, 1e-6);

  for (const Problem& p : {cutmg::example2(1e-1), cutmg::example2(1e-5), cutmg::example2(1e-9),
                           cutmg::example3(10.0), cutmg::example3(1e5), cutmg::example3(1e9)}) {
    CAPTURE(p.name);
    for (const Scalar angle : {0.3, 1.7, 4.0}) {
      const Vec2 n{std::cos(angle), std::sin(angle)};
      const Vec2 x = center + r0 * n;
      // Zero jump of the solution and of the conormal flux across the circle.
      CHECK(p.exact(x, 0) == doctest::Approx(p.exact(x, 1)).epsilon(1e-12));
      const Scalar flux0 = p.alpha[0] * p.exact_grad(x, 0).dot(n);
      const Scalar flux1 = p.alpha[1] * p.exact_grad(x, 1).dot(n);
      CHECK(flux0 == doctest::Approx(flux1).epsilon(1e-12));
    }
  }

  // Stated closed forms of the right-hand sides.
  CHECK(cutmg::example2(1e-5).rhs({0.3, 0.8}, 1) == doctest::Approx(-4e-5));
  CHECK(cutmg::example3(1e9).rhs({0.3, 0.8}, 0) == doctest::Approx(-4.0));
}
