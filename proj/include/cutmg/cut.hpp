#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "cutmg/levelset.hpp"
#include "cutmg/mesh.hpp"
#include "cutmg/types.hpp"

namespace cutmg {

/// One triangle of the sub-triangulation of an element part.
struct SubTriangle {
  std::array<Vec2, 3> v;  // counter-clockwise
};

/// Geometry of one cut background element: the interface segment (the chord
/// for a circular interface), the two element parts as sub-triangulations,
/// and the adjacent subdomains.
struct CutElement {
  Index element = -1;
  int iface = -1;    // index into the InterfaceSet
  int sub_pos = -1;  // subdomain on the positive side of the level set
  int sub_neg = -1;
  std::array<Vec2, 2> segment{};  // endpoints of the interface segment
  Vec2 normal{};                  // unit normal, positive side -> negative side
  Scalar segment_length = 0;
  Scalar meas_pos = 0;  // area of the positive-side part
  Scalar meas_neg = 0;
  std::vector<SubTriangle> parts_pos;  // 1 or 2 triangles
  std::vector<SubTriangle> parts_neg;
};

/// Element classification of a mesh against an interface set. Uncut elements
/// carry their subdomain; cut elements carry the part geometry.
struct CutDecomposition {
  int n_subdomains = 1;
  std::vector<int> element_subdomain;  // per element; -1 when cut
  std::vector<Index> cut_of_element;   // per element; -1 when uncut
  std::vector<CutElement> cuts;

  bool is_cut(Index t) const { return cut_of_element[t] >= 0; }
  const CutElement& cut(Index t) const { return cuts[cut_of_element[t]]; }

  /// True when element t has a part of positive measure in the subdomain.
  bool element_in_subdomain(Index t, int sub) const {
    if (!is_cut(t)) return element_subdomain[t] == sub;
    const CutElement& c = cuts[cut_of_element[t]];
    return c.sub_pos == sub || c.sub_neg == sub;
  }
};

/// Classifies every element of the mesh against the interfaces and
/// sub-triangulates the cut ones. Vertex level-set values with magnitude
/// below snap_tol * h_K are snapped to zero before classification, so
/// near-degenerate cuts collapse to uncut elements. Throws ConfigError if an
/// element is crossed by more than one interface.
CutDecomposition classify_and_cut(const TriMesh& mesh, const InterfaceSet& interfaces,
                                  Scalar snap_tol = 1e-10);

/// Appends the "cuts <count>" section (element id, segment endpoints) to a
/// mesh dump stream.
void dump_cuts(const CutDecomposition& cut, std::ostream& out);

}  // namespace cutmg
