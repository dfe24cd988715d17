#pragma once

#include <vector>

#include "cutmg/types.hpp"

namespace cutmg {

/// A single analytic interface given as the zero set of an oriented level-set
/// function. The convention throughout is that the first of the two adjacent
/// subdomains lies where value() > 0 and the interface normal points from the
/// positive side into the negative side.
struct Interface {
  enum class Kind { vertical_line, circle };

  Kind kind = Kind::vertical_line;
  Scalar c = 0.5;             // vertical line x = c
  Vec2 center{0.5, 0.5};      // circle
  Scalar r2 = 0.25;           // squared radius

  /// Oriented level-set value; positive on the first adjacent subdomain
  /// (x < c for a line, inside for a circle).
  Scalar value(const Vec2& x) const {
    if (kind == Kind::vertical_line) return c - x.x();
    return r2 - (x - center).squaredNorm();
  }

  /// Unit normal of the zero set at x, pointing from the positive side into
  /// the negative side (rightward for a line, radially outward for a circle).
  Vec2 normal(const Vec2& x) const {
    if (kind == Kind::vertical_line) return {1.0, 0.0};
    const Vec2 d = x - center;
    const Scalar len = d.norm();
    if (len == 0) return {1.0, 0.0};
    return d / len;
  }

  /// Parameter t in (0, 1) with value(a + t*(b-a)) == 0, given a sign change
  /// between the endpoint values va and vb.
  Scalar edge_crossing(const Vec2& a, const Vec2& b, Scalar va, Scalar vb) const;
};

/// An ordered collection of non-intersecting interfaces partitioning the unit
/// square into subdomains. Either a set of parallel vertical lines (sorted by
/// offset; line m separates subdomain m on its left from subdomain m+1) or a
/// single circle (subdomain 0 inside, 1 outside). An empty set leaves the
/// whole domain as subdomain 0.
class InterfaceSet {
 public:
  InterfaceSet() = default;

  static InterfaceSet none();
  static InterfaceSet vertical_line(Scalar c);
  static InterfaceSet vertical_lines(std::vector<Scalar> offsets);
  static InterfaceSet circle(const Vec2& center, Scalar r2);

  int n_interfaces() const { return static_cast<int>(interfaces_.size()); }
  int n_subdomains() const;
  const Interface& interface(int m) const { return interfaces_[m]; }

  /// Subdomain adjacent to interface m on its positive side.
  int positive_side(int m) const;
  /// Subdomain adjacent to interface m on its negative side.
  int negative_side(int m) const;

  /// Subdomain containing the point (points on an interface are assigned to
  /// the positive side).
  int subdomain_of(const Vec2& x) const;

 private:
  std::vector<Interface> interfaces_;
};

}  // namespace cutmg
