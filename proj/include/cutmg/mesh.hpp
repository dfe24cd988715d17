#pragma once

#include <array>
#include <iosfwd>
#include <numbers>
#include <vector>

#include "cutmg/types.hpp"

namespace cutmg {

/// Structured triangulation of the unit square: n-by-n squares, each split
/// along its lower-left to upper-right diagonal. Triangle ids enumerate the
/// squares row-major with two triangles per square:
///   type 0: lower-right triangle (ll, lr, ur)
///   type 1: upper-left triangle (ll, ur, ul)
/// Vertex ids enumerate grid points row-major, id = j*(n+1) + i.
/// All connectivity is computed from indices; nothing is stored.
class TriMesh {
 public:
  explicit TriMesh(int n);

  int n() const { return n_; }
  Scalar cell() const { return cell_; }
  /// Largest element diameter (the hypotenuse).
  Scalar h() const { return cell_ * std::numbers::sqrt2_v<Scalar>; }

  Index n_vertices() const { return Index(n_ + 1) * (n_ + 1); }
  Index n_triangles() const { return 2 * Index(n_) * n_; }

  Vec2 vertex(Index v) const;
  bool vertex_on_boundary(Index v) const;

  std::array<Index, 3> triangle_vertices(Index t) const;
  std::array<Vec2, 3> triangle_coords(Index t) const;
  Scalar triangle_area() const { return 0.5 * cell_ * cell_; }

  /// Neighbor across local edge e (between local vertices e and (e+1)%3),
  /// or -1 on the domain boundary.
  Index neighbor(Index t, int e) const;

  /// Triangle of the next-coarser mesh (n/2 squares per side) containing
  /// this triangle. Requires even n.
  Index parent(Index t) const;

 private:
  int n_;
  Scalar cell_;

  struct Split {
    int i, j, type;
  };
  Split split(Index t) const;
  Index tri_id(int i, int j, int type) const { return 2 * (Index(j) * n_ + i) + type; }
};

/// Nested mesh hierarchy, coarsest first. Level l has n_coarse * 2^l squares
/// per side; each refinement quarters every triangle.
struct MeshHierarchy {
  std::vector<TriMesh> levels;

  const TriMesh& finest() const { return levels.back(); }
  int n_levels() const { return static_cast<int>(levels.size()); }
};

/// Builds a hierarchy of n_levels nested meshes starting from n_coarse
/// squares per side. Requires n_coarse >= 1 and n_levels >= 1.
MeshHierarchy build_hierarchy(int n_coarse, int n_levels);

/// Line-oriented text dump of the mesh (vertices and triangles); the cut
/// segments section is appended by the caller when a decomposition exists.
/// Format:
///   vertices <count>      followed by "id x y" lines
///   triangles <count>     followed by "id v0 v1 v2" lines
void dump_mesh(const TriMesh& mesh, std::ostream& out);

}  // namespace cutmg
