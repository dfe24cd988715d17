#include "cutmg/mesh.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace cutmg {

TriMesh::TriMesh(int n) : n_(n), cell_(Scalar(1) / n) {
  if (n < 1) throw ConfigError("TriMesh: need at least one square per side");
}

TriMesh::Split TriMesh::split(Index t) const {
  const int type = static_cast<int>(t & 1);
  const Index q = t >> 1;
  return {static_cast<int>(q % n_), static_cast<int>(q / n_), type};
}

Vec2 TriMesh::vertex(Index v) const {
  const Index i = v % (n_ + 1);
  const Index j = v / (n_ + 1);
  return {cell_ * i, cell_ * j};
}

bool TriMesh::vertex_on_boundary(Index v) const {
  const Index i = v % (n_ + 1);
  const Index j = v / (n_ + 1);
  return i == 0 || i == n_ || j == 0 || j == n_;
}

std::array<Index, 3> TriMesh::triangle_vertices(Index t) const {
  const auto [i, j, type] = split(t);
  const Index ll = Index(j) * (n_ + 1) + i;
  const Index lr = ll + 1;
  const Index ul = ll + (n_ + 1);
  const Index ur = ul + 1;
  if (type == 0) return {ll, lr, ur};
  return {ll, ur, ul};
}

std::array<Vec2, 3> TriMesh::triangle_coords(Index t) const {
  const auto v = triangle_vertices(t);
  return {vertex(v[0]), vertex(v[1]), vertex(v[2])};
}

Index TriMesh::neighbor(Index t, int e) const {
  const auto [i, j, type] = split(t);
  if (type == 0) {
    switch (e) {
      case 0: return j > 0 ? tri_id(i, j - 1, 1) : -1;       // bottom
      case 1: return i + 1 < n_ ? tri_id(i + 1, j, 1) : -1;  // right
      case 2: return tri_id(i, j, 1);                        // diagonal
      default: break;
    }
  } else {
    switch (e) {
      case 0: return tri_id(i, j, 0);                        // diagonal
      case 1: return j + 1 < n_ ? tri_id(i, j + 1, 0) : -1;  // top
      case 2: return i > 0 ? tri_id(i - 1, j, 0) : -1;       // left
      default: break;
    }
  }
  throw ConfigError("TriMesh::neighbor: edge index out of range");
}

Index TriMesh::parent(Index t) const {
  if (n_ % 2 != 0) throw ConfigError("TriMesh::parent: mesh is not a refinement");
  const auto [i, j, type] = split(t);
  const int a = i & 1;
  const int b = j & 1;
  const int parent_type = (a == b) ? type : b;
  const Index pq = Index(j / 2) * (n_ / 2) + (i / 2);
  return 2 * pq + parent_type;
}

MeshHierarchy build_hierarchy(int n_coarse, int n_levels) {
  if (n_coarse < 1 || n_levels < 1)
    throw ConfigError("build_hierarchy: need n_coarse >= 1 and n_levels >= 1");
  MeshHierarchy hierarchy;
  hierarchy.levels.reserve(n_levels);
  int n = n_coarse;
  for (int l = 0; l < n_levels; ++l, n *= 2) hierarchy.levels.emplace_back(n);
  return hierarchy;
}

void dump_mesh(const TriMesh& mesh, std::ostream& out) {
  out << "vertices " << mesh.n_vertices() << "\n";
  for (Index v = 0; v < mesh.n_vertices(); ++v) {
    const Vec2 x = mesh.vertex(v);
    out << v << " " << x.x() << " " << x.y() << "\n";
  }
  out << "triangles " << mesh.n_triangles() << "\n";
  for (Index t = 0; t < mesh.n_triangles(); ++t) {
    const auto v = mesh.triangle_vertices(t);
    out << t << " " << v[0] << " " << v[1] << " " << v[2] << "\n";
  }
}

}  // namespace cutmg
