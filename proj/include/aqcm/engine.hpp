#pragma once

#include "aqcm/core.hpp"
#include "aqcm/tree.hpp"

namespace aqcm {

struct SeedEdge {
  std::size_t u = 0;  // u < v
  std::size_t v = 0;
  double weight = 0.0;
  bool operator==(const SeedEdge&) const = default;
};

// Mutually nominated high-similarity pairs, ordered by non-increasing weight
// with ties broken lexicographically by endpoint indices.
using SeedList = std::vector<SeedEdge>;

struct GrowthConfig {
  // Join tolerance: candidates within tau of the best contribution join in the
  // same round, so symmetric vertices are not forced into an arbitrary order.
  double tau = 0.008;
  // Safety bound on hierarchy depth; a covering root is forced beyond it.
  int max_levels = 100;
};

// For every vertex, sorts its neighbors by similarity and nominates the prefix
// before the first difference at or above the median gap. An edge is a seed
// when both endpoints nominate each other.
SeedList select_seeds(const SimilarityMatrix& s);

// Grows one cluster per surviving seed, repeatedly joining all candidates
// whose contribution is within tau of the maximum while that maximum stays
// above the density-scaled acceptance threshold. Seeds covered by a stored
// cluster are discarded. The result may overlap and may not cover.
ClusterFamily grow_clusters(const SimilarityMatrix& s, SeedList seeds, const GrowthConfig& cfg);

// First-level overlap resolution: keep denser clusters, drop any later cluster
// sharing more than half of the smaller side with a kept one.
ClusterFamily adjust_first(ClusterFamily family, const SimilarityMatrix& s);

// Overlap resolution for contracted levels: repeatedly merge the densest
// cluster with its best-density overlapping partner until every pair shares at
// most half of the smaller side. Densities are taken over the base matrix.
ClusterFamily adjust_merge(ClusterFamily family, const SimilarityMatrix& base);

struct ContractResult {
  SimilarityMatrix matrix;              // similarities between the new vertices
  std::vector<Cluster> vertex_to_base;  // new vertex -> base members
};

// Contracts a family of base-member sets into one vertex each; the similarity
// between two vertices is the mean base similarity over all pairs with one end
// in each set (pairs inside the intersection counted once).
ContractResult contract(const std::vector<Cluster>& vertex_sets, const SimilarityMatrix& base);

// Convenience form promoting leftover base vertices to singleton sets.
ContractResult contract(const ClusterFamily& clusters, const std::vector<std::size_t>& singletons,
                        const SimilarityMatrix& base);

// Runs seed selection, growth, adjustment and contraction level by level until
// a single cluster covers the data (or a stall / the level bound forces a
// covering root). Unclustered vertices ride along as flagged pass-through
// nodes. Parent edges are derived by member-set containment, so a node whose
// members fall inside two overlapping parents gets both.
HierarchyTree build_hierarchy(const SimilarityMatrix& s, const GrowthConfig& cfg = {});

}  // namespace aqcm
