#include "aqcm/tree.hpp"

#include <algorithm>
#include <cmath>

namespace aqcm {

void HierarchyTree::rebuild_adjacency() {
  children_.assign(nodes.size(), {});
  parents_.assign(nodes.size(), {});
  for (const TreeEdge& e : edges) {
    children_.at(e.parent).push_back(e.child);
    parents_.at(e.child).push_back(e.parent);
  }
  for (auto& c : children_) std::sort(c.begin(), c.end());
  for (auto& p : parents_) std::sort(p.begin(), p.end());
}

std::size_t HierarchyTree::base_size() const {
  std::size_t n = 0;
  for (const TreeNode& node : nodes)
    if (node.level == 0) ++n;
  return n;
}

bool HierarchyTree::same_nodes(const HierarchyTree& other) const {
  if (nodes.size() != other.nodes.size()) return false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const TreeNode& a = nodes[i];
    const TreeNode& b = other.nodes[i];
    if (a.id != b.id || a.level != b.level || a.members != b.members ||
        a.density != b.density || a.unclustered != b.unclustered)
      return false;
  }
  return true;
}

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw numeric_error("hierarchy invariant violated: " + what);
}

}  // namespace

void validate(const HierarchyTree& t) {
  if (t.nodes.empty()) fail("empty tree");
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    if (t.nodes[i].id != i) fail("node ids must be consecutive");
  if (t.root >= t.nodes.size()) fail("root id out of range");

  const std::size_t n = t.base_size();
  if (n == 0) fail("no leaves");

  std::vector<char> seen_leaf(n, 0);
  for (const TreeNode& node : t.nodes) {
    if (node.members.empty()) fail("node with empty member set");
    for (std::size_t i = 0; i < node.members.size(); ++i) {
      if (node.members[i] >= n) fail("member index out of base range");
      if (i > 0 && node.members[i] <= node.members[i - 1]) fail("members not sorted unique");
    }
    if (node.level == 0) {
      if (node.members.size() != 1) fail("leaf with more than one member");
      if (seen_leaf[node.members[0]]) fail("duplicate leaf");
      seen_leaf[node.members[0]] = 1;
    }
    if (node.level < 0) fail("negative level");
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!seen_leaf[i]) fail("missing leaf for base index " + std::to_string(i));

  const TreeNode& root = t.nodes[t.root];
  if (root.members.size() != n) fail("root does not cover all base data");

  std::vector<std::size_t> parent_count(t.nodes.size(), 0);
  std::vector<std::vector<std::size_t>> children(t.nodes.size());
  for (const TreeEdge& e : t.edges) {
    if (e.parent >= t.nodes.size() || e.child >= t.nodes.size()) fail("edge endpoint out of range");
    if (t.nodes[e.parent].level != t.nodes[e.child].level + 1)
      fail("edge does not step down exactly one level");
    parent_count[e.child]++;
    children[e.parent].push_back(e.child);
  }
  for (const TreeNode& node : t.nodes) {
    if (node.id == t.root) {
      if (parent_count[node.id] != 0) fail("root has a parent");
      continue;
    }
    if (parent_count[node.id] == 0)
      fail("non-root node " + std::to_string(node.id) + " has no parent");
  }

  // Level monotonicity along edges already guarantees acyclicity; check that
  // each internal node's members equal the union of its children's members.
  for (const TreeNode& node : t.nodes) {
    if (node.level == 0) continue;
    Cluster u;
    for (std::size_t c : children[node.id]) u = cluster_union(u, t.nodes[c].members);
    if (u != node.members)
      fail("node " + std::to_string(node.id) + " members differ from union of children");
  }
}

void validate(const HierarchyTree& t, const SimilarityMatrix& base) {
  validate(t);
  for (const TreeNode& node : t.nodes) {
    const double expected = node.members.size() == 1 ? 1.0 : density(node.members, base);
    if (std::abs(expected - node.density) > 1e-9)
      fail("node " + std::to_string(node.id) + " density mismatch");
  }
}

}  // namespace aqcm
