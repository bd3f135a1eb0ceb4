#pragma once

#include "aqcm/core.hpp"
#include "aqcm/diffusion.hpp"

namespace aqcm {

struct BlockProbabilityMatrix {
  std::vector<std::vector<double>> p;       // empirical edge probability between blocks
  std::vector<std::size_t> cluster_sizes;
  std::vector<char> diagonal_defined;       // false for singleton blocks (0 possible edges)
};

// Edge probabilities within and between the clusters of a partition, with the
// graph read as undirected and unweighted (edge iff weight > 0).
BlockProbabilityMatrix edge_probabilities(const AdjacencyGraph& g, const ClusterFamily& family);

struct SeparationRatios {
  std::vector<std::vector<double>> delta;  // (P_ll - P_lk) / P_ll, diagonal zero
  std::vector<double> delta_min;           // row minima
  std::vector<char> defined;               // false where the diagonal is zero
};

SeparationRatios separation_ratios(const BlockProbabilityMatrix& bp);

// Newman modularity of a partition over the binarized undirected graph.
double modularity(const AdjacencyGraph& g, const ClusterFamily& family);

// Adjusted Rand index between two labelings of the same points.
double adjusted_rand_index(const std::vector<int>& pred, const std::vector<int>& truth);

struct SizeStats {
  double mean = 0.0;
  double stddev = 0.0;
  double median = 0.0;
  std::size_t min = 0;
  std::size_t max = 0;
};

SizeStats cluster_size_stats(const ClusterFamily& family);

}  // namespace aqcm
