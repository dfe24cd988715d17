#pragma once

#include <array>
#include <vector>

#include "cutmg/cut.hpp"
#include "cutmg/mesh.hpp"
#include "cutmg/types.hpp"

namespace cutmg {

/// Heaviside-enriched P1 space: one dof per (mesh node, subdomain) pair whose
/// nodal basis support has a positive-measure intersection with the
/// subdomain. Dofs are numbered subdomain-major, node-id-minor, which makes
/// the numbering deterministic and groups each subdomain into a contiguous
/// block.
class EnrichedSpace {
 public:
  EnrichedSpace(const TriMesh& mesh, const CutDecomposition& cut);

  Index n_dofs() const { return n_dofs_; }
  int n_subdomains() const { return n_sub_; }
  Index subdomain_offset(int sub) const { return offsets_[sub]; }
  Index subdomain_size(int sub) const { return offsets_[sub + 1] - offsets_[sub]; }

  /// Global dof of (subdomain, node), or -1 when the pair carries no dof.
  Index dof(int sub, Index node) const { return node_dof_[sub][node]; }

  Index node_of_dof(Index d) const { return dof_node_[d]; }
  int subdomain_of_dof(Index d) const { return dof_sub_[d]; }
  bool is_boundary_dof(Index d) const { return boundary_[d]; }

  /// Number of mesh nodes represented in more than one subdomain.
  Index n_doubled_nodes() const { return n_doubled_; }

  /// The three dofs of element t in the given subdomain, ordered like the
  /// element's vertices. Requires the element to intersect the subdomain.
  std::array<Index, 3> element_dofs(const TriMesh& mesh, Index t, int sub) const;

 private:
  int n_sub_ = 1;
  Index n_dofs_ = 0;
  Index n_doubled_ = 0;
  std::vector<Index> offsets_;                // size n_sub_ + 1
  std::vector<std::vector<Index>> node_dof_;  // per subdomain: node -> dof or -1
  std::vector<Index> dof_node_;
  std::vector<int> dof_sub_;
  std::vector<bool> boundary_;
};

}  // namespace cutmg
