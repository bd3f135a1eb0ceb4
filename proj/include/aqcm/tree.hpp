#pragma once

#include "aqcm/core.hpp"

namespace aqcm {

struct TreeNode {
  std::size_t id = 0;
  int level = 0;
  Cluster members;       // base-data indices, sorted
  double density = 1.0;  // density of `members` under the base similarity; 1.0 for singletons
  bool unclustered = false;  // pass-through copy of a base point that joined no cluster yet
};

struct TreeEdge {
  std::size_t parent = 0;
  std::size_t child = 0;
  bool operator==(const TreeEdge&) const = default;
};

// Leveled hierarchy over a base data set. Leaves are level-0 singletons, every
// edge runs from level L+1 down to level L, and a node may have more than one
// parent (multimembership), so the structure is a rooted DAG rather than a
// strict tree.
class HierarchyTree {
 public:
  std::vector<TreeNode> nodes;  // nodes[i].id == i
  std::vector<TreeEdge> edges;
  std::size_t root = 0;

  // Call after any change to `edges` or `nodes`.
  void rebuild_adjacency();

  const std::vector<std::size_t>& children(std::size_t id) const { return children_.at(id); }
  const std::vector<std::size_t>& parents(std::size_t id) const { return parents_.at(id); }

  std::size_t base_size() const;

  bool operator==(const HierarchyTree& other) const {
    return root == other.root && edges == other.edges && same_nodes(other);
  }

 private:
  bool same_nodes(const HierarchyTree& other) const;

  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::vector<std::size_t>> parents_;
};

// Structural invariants: ids consecutive, per-edge level step of one, single
// parentless root covering all base data, parent members equal to the union of
// child members, leaves are level-0 singletons.
void validate(const HierarchyTree& t);

// Additionally checks every node's stored density against the base matrix.
void validate(const HierarchyTree& t, const SimilarityMatrix& base);

}  // namespace aqcm
