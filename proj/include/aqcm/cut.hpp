#pragma once

#include "aqcm/tree.hpp"

namespace aqcm {

struct PruneResult {
  HierarchyTree tree;                     // reindexed; singleton pass-through chains removed
  std::vector<std::size_t> unclustered;   // base ids left in no surviving cluster below the root
};

// Removes pass-through chains of still-unclustered data (and the leaves they
// orphan) so the cut optimization only sees real clusters. Throws
// numeric_error("no clusterable structure") when nothing but the root remains.
PruneResult prune_unclustered(const HierarchyTree& t);

struct WeightedEdge {
  std::size_t parent = 0;
  std::size_t child = 0;
  double weight = 0.0;
  bool operator==(const WeightedEdge&) const = default;
};

// The hierarchy restricted to non-leaf, non-unclustered nodes, with every
// parent->child edge weighted by child size over the squared density drop.
struct WeightedCutTree {
  std::size_t root = 0;
  std::vector<std::size_t> node_ids;  // ids into the source HierarchyTree
  std::vector<WeightedEdge> edges;
};

// Edge weight |C_child| / (den(C_child)^2 - den(C_parent)^2), with the
// denominator clamped below by epsilon so non-drops get a huge (never cut)
// weight instead of an undefined one.
WeightedCutTree weight_edges(const HierarchyTree& t, double epsilon = 1e-12);

// Keeps each multi-parent node's maximum-weight in-edge (ties: smallest parent
// id). Levels strictly increase along edges, so the per-node greedy choice is
// an exact maximum arborescence.
WeightedCutTree max_arborescence(const WeightedCutTree& t);

struct EdgeCut {
  std::vector<WeightedEdge> edges;  // selected parent->child edges of the weighted tree
  double value = 0.0;               // mean weight over the cut
};

// Finds the edge cut separating the root from the deepest weighted nodes with
// minimum mean weight, by repeatedly contracting the most contractible edge
// while that beats the current root cut average.
EdgeCut min_average_cut(const WeightedCutTree& tmax);

// Member sets of the child endpoints of the cut edges, ordered by child id.
ClusterFamily clustering_from_cut(const HierarchyTree& t, const EdgeCut& cut);

struct CutSelection {
  ClusterFamily clusters;
  std::vector<std::size_t> unclustered;
  EdgeCut cut;
};

// prune -> weight -> arborescence -> min average cut -> member sets.
CutSelection select_clusters(const HierarchyTree& t);

}  // namespace aqcm
