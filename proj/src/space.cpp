#include "cutmg/space.hpp"

namespace cutmg {

EnrichedSpace::EnrichedSpace(const TriMesh& mesh, const CutDecomposition& cut) {
  n_sub_ = cut.n_subdomains;
  const Index n_nodes = mesh.n_vertices();

  // A node belongs to a subdomain when any element of its patch has a
  // positive-measure part there.
  std::vector<std::vector<bool>> member(n_sub_, std::vector<bool>(n_nodes, false));
  for (Index t = 0; t < mesh.n_triangles(); ++t) {
    const auto v = mesh.triangle_vertices(t);
    auto mark = [&](int sub) {
      for (const Index p : v) member[sub][p] = true;
    };
    if (cut.is_cut(t)) {
      const CutElement& c = cut.cut(t);
      mark(c.sub_pos);
      mark(c.sub_neg);
    } else {
      mark(cut.element_subdomain[t]);
    }
  }

  offsets_.assign(n_sub_ + 1, 0);
  node_dof_.assign(n_sub_, std::vector<Index>(n_nodes, -1));
  std::vector<int> copies(n_nodes, 0);
  for (int s = 0; s < n_sub_; ++s) {
    offsets_[s] = n_dofs_;
    for (Index p = 0; p < n_nodes; ++p) {
      if (!member[s][p]) continue;
      node_dof_[s][p] = n_dofs_++;
      dof_node_.push_back(p);
      dof_sub_.push_back(s);
      boundary_.push_back(mesh.vertex_on_boundary(p));
      ++copies[p];
    }
  }
  offsets_[n_sub_] = n_dofs_;

  // Extra dofs beyond one per active node; a node shared by s subdomains
  // contributes s - 1.
  for (Index p = 0; p < n_nodes; ++p)
    if (copies[p] > 1) n_doubled_ += copies[p] - 1;
}

std::array<Index, 3> EnrichedSpace::element_dofs(const TriMesh& mesh, Index t, int sub) const {
  const auto v = mesh.triangle_vertices(t);
  std::array<Index, 3> dofs{};
  for (int k = 0; k < 3; ++k) {
    dofs[k] = node_dof_[sub][v[k]];
    if (dofs[k] < 0)
      throw ConfigError("element_dofs: element does not intersect subdomain " +
                        std::to_string(sub));
  }
  return dofs;
}

}  // namespace cutmg
