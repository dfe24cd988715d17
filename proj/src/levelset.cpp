#include "cutmg/levelset.hpp"

#include <algorithm>
#include <cmath>

namespace cutmg {

Scalar Interface::edge_crossing(const Vec2& a, const Vec2& b, Scalar va, Scalar vb) const {
  if (!((va > 0 && vb < 0) || (va < 0 && vb > 0)))
    throw ConfigError("edge_crossing: endpoint values do not change sign");
  if (kind == Kind::vertical_line) {
    return va / (va - vb);
  }
  // Circle: ||a + t d - center||^2 = r2 is quadratic in t; the sign change
  // guarantees exactly one root in (0, 1). Solve in the numerically stable
  // form and pick that root.
  const Vec2 d = b - a;
  const Vec2 m = a - center;
  const Scalar qa = d.squaredNorm();
  const Scalar qb = 2.0 * m.dot(d);
  const Scalar qc = m.squaredNorm() - r2;
  Scalar disc = qb * qb - 4.0 * qa * qc;
  disc = std::max(disc, Scalar(0));
  const Scalar s = std::sqrt(disc);
  const Scalar q = -0.5 * (qb + (qb >= 0 ? s : -s));
  Scalar t1 = q / qa;
  Scalar t2 = (q != 0) ? qc / q : t1;
  if (t1 > t2) std::swap(t1, t2);
  if (t1 > 0 && t1 < 1) return t1;
  if (t2 > 0 && t2 < 1) return t2;
  // Roundoff pushed the root onto an endpoint; clamp to the nearer one.
  return std::clamp(std::abs(t1 - 0.5) < std::abs(t2 - 0.5) ? t1 : t2, Scalar(0), Scalar(1));
}

InterfaceSet InterfaceSet::none() { return InterfaceSet{}; }

InterfaceSet InterfaceSet::vertical_line(Scalar c) { return vertical_lines({c}); }

InterfaceSet InterfaceSet::vertical_lines(std::vector<Scalar> offsets) {
  std::sort(offsets.begin(), offsets.end());
  for (std::size_t m = 1; m < offsets.size(); ++m)
    if (offsets[m] == offsets[m - 1])
      throw ConfigError("InterfaceSet: coincident vertical lines");
  InterfaceSet set;
  for (const Scalar c : offsets) {
    Interface iface;
    iface.kind = Interface::Kind::vertical_line;
    iface.c = c;
    set.interfaces_.push_back(iface);
  }
  return set;
}

InterfaceSet InterfaceSet::circle(const Vec2& center, Scalar r2) {
  if (r2 <= 0) throw ConfigError("InterfaceSet: circle needs a positive squared radius");
  Interface iface;
  iface.kind = Interface::Kind::circle;
  iface.center = center;
  iface.r2 = r2;
  InterfaceSet set;
  set.interfaces_.push_back(iface);
  return set;
}

int InterfaceSet::n_subdomains() const {
  if (interfaces_.empty()) return 1;
  if (interfaces_.front().kind == Interface::Kind::circle) return 2;
  return n_interfaces() + 1;
}

int InterfaceSet::positive_side(int m) const {
  if (interfaces_[m].kind == Interface::Kind::circle) return 0;  // inside
  return m;                                                      // left stripe
}

int InterfaceSet::negative_side(int m) const { return positive_side(m) + 1; }

int InterfaceSet::subdomain_of(const Vec2& x) const {
  if (interfaces_.empty()) return 0;
  if (interfaces_.front().kind == Interface::Kind::circle)
    return interfaces_.front().value(x) >= 0 ? 0 : 1;
  int sub = static_cast<int>(interfaces_.size());
  for (int m = 0; m < n_interfaces(); ++m) {
    if (interfaces_[m].value(x) >= 0) {
      sub = m;
      break;
    }
  }
  return sub;
}

}  // namespace cutmg
