#include "cutmg/cut.hpp"

#include <cmath>
#include <ostream>

#include "cutmg/quadrature.hpp"

namespace cutmg {

namespace {

SubTriangle oriented(const Vec2& a, const Vec2& b, const Vec2& c) {
  if (signed_area(a, b, c) >= 0) return {{a, b, c}};
  return {{a, c, b}};
}

Scalar part_area(const std::vector<SubTriangle>& part) {
  Scalar area = 0;
  for (const auto& t : part) area += std::abs(signed_area(t.v[0], t.v[1], t.v[2]));
  return area;
}

/// Splits a triangle whose vertex values have strict signs s[k] in {-1, 0, +1}
/// (not all on one side) into the interface segment and the two parts.
void split_element(const std::array<Vec2, 3>& x, const std::array<Scalar, 3>& val,
                   const Interface& iface, CutElement& cut) {
  std::array<int, 3> sign{};
  int n_zero = 0;
  for (int k = 0; k < 3; ++k) {
    sign[k] = (val[k] > 0) - (val[k] < 0);
    n_zero += (sign[k] == 0);
  }

  auto crossing = [&](int a, int b) {
    const Scalar t = iface.edge_crossing(x[a], x[b], val[a], val[b]);
    return Vec2(x[a] + t * (x[b] - x[a]));
  };

  if (n_zero == 1) {
    // Interface passes through one vertex and the opposite edge.
    int z = 0;
    while (sign[z] != 0) ++z;
    const int a = (z + 1) % 3;
    const int b = (z + 2) % 3;
    const Vec2 p = crossing(a, b);
    cut.segment = {x[z], p};
    auto& part_a = (sign[a] > 0) ? cut.parts_pos : cut.parts_neg;
    auto& part_b = (sign[b] > 0) ? cut.parts_pos : cut.parts_neg;
    part_a.push_back(oriented(x[z], x[a], p));
    part_b.push_back(oriented(x[z], p, x[b]));
    return;
  }

  // Two edges are crossed; the lone vertex sits on one side, the remaining
  // quadrilateral is split into two triangles.
  int lone = -1;
  for (int k = 0; k < 3; ++k) {
    const int a = (k + 1) % 3;
    const int b = (k + 2) % 3;
    if (sign[k] != sign[a] && sign[k] != sign[b]) lone = k;
  }
  if (lone < 0) throw ConfigError("split_element: inconsistent sign pattern");
  const int a = (lone + 1) % 3;
  const int b = (lone + 2) % 3;
  const Vec2 p = crossing(lone, a);   // on edge (lone, a)
  const Vec2 q = crossing(b, lone);   // on edge (b, lone)
  cut.segment = {p, q};
  auto& lone_part = (sign[lone] > 0) ? cut.parts_pos : cut.parts_neg;
  auto& quad_part = (sign[lone] > 0) ? cut.parts_neg : cut.parts_pos;
  lone_part.push_back(oriented(x[lone], p, q));
  quad_part.push_back(oriented(p, x[a], x[b]));
  quad_part.push_back(oriented(p, x[b], q));
}

}  // namespace

CutDecomposition classify_and_cut(const TriMesh& mesh, const InterfaceSet& interfaces,
                                  Scalar snap_tol) {
  CutDecomposition out;
  out.n_subdomains = interfaces.n_subdomains();
  out.element_subdomain.assign(mesh.n_triangles(), -1);
  out.cut_of_element.assign(mesh.n_triangles(), -1);

  const Scalar snap = snap_tol * mesh.h();

  for (Index t = 0; t < mesh.n_triangles(); ++t) {
    const auto x = mesh.triangle_coords(t);

    int crossing_iface = -1;
    std::array<Scalar, 3> crossing_val{};
    for (int m = 0; m < interfaces.n_interfaces(); ++m) {
      std::array<Scalar, 3> val{};
      bool pos = false, neg = false;
      for (int k = 0; k < 3; ++k) {
        val[k] = interfaces.interface(m).value(x[k]);
        if (std::abs(val[k]) < snap) val[k] = 0;
        pos = pos || val[k] > 0;
        neg = neg || val[k] < 0;
      }
      if (pos && neg) {
        if (crossing_iface >= 0)
          throw ConfigError("classify_and_cut: element " + std::to_string(t) +
                            " is crossed by two interfaces; refine the mesh");
        crossing_iface = m;
        crossing_val = val;
      }
    }

    if (crossing_iface < 0) {
      const Vec2 centroid = (x[0] + x[1] + x[2]) / 3.0;
      out.element_subdomain[t] = interfaces.subdomain_of(centroid);
      continue;
    }

    CutElement cut;
    cut.element = t;
    cut.iface = crossing_iface;
    cut.sub_pos = interfaces.positive_side(crossing_iface);
    cut.sub_neg = interfaces.negative_side(crossing_iface);
    split_element(x, crossing_val, interfaces.interface(crossing_iface), cut);

    cut.segment_length = (cut.segment[1] - cut.segment[0]).norm();
    cut.meas_pos = part_area(cut.parts_pos);
    cut.meas_neg = part_area(cut.parts_neg);

    // Chord normal: perpendicular to the segment, oriented by the level set
    // so it points from the positive part into the negative part.
    const Vec2 d = cut.segment[1] - cut.segment[0];
    Vec2 n{d.y(), -d.x()};
    n /= n.norm();
    const Vec2 mid = 0.5 * (cut.segment[0] + cut.segment[1]);
    if (n.dot(interfaces.interface(crossing_iface).normal(mid)) < 0) n = -n;
    cut.normal = n;

    out.cut_of_element[t] = static_cast<Index>(out.cuts.size());
    out.cuts.push_back(std::move(cut));
  }
  return out;
}

void dump_cuts(const CutDecomposition& cut, std::ostream& out) {
  out << "cuts " << cut.cuts.size() << "\n";
  for (const auto& c : cut.cuts) {
    out << c.element << " " << c.segment[0].x() << " " << c.segment[0].y() << " "
        << c.segment[1].x() << " " << c.segment[1].y() << "\n";
  }
}

}  // namespace cutmg
