#pragma once

#include <optional>

#include "aqcm/core.hpp"

namespace aqcm {

struct PreferenceScores {
  double phi_p = 0.0;  // individual preference: contribution relative to the best candidate
  double phi_a = 0.0;  // community acceptance: contribution relative to cluster density
  double phi_m = 0.0;  // mutual preference: phi_p * phi_a
  double phi_c = 0.0;  // clustering factor: best mutual preference over all candidates
};

struct ClusteringFactor {
  PreferenceScores scores;           // of the winning candidate
  std::optional<std::size_t> best;   // family index; empty on ties or all-zero contributions
};

// Scores vertex x against every cluster other than {x} itself (clusters
// already containing x are skipped). `best` is the unique argmax of the
// mutual preference, or empty when the maximum is tied.
ClusteringFactor clustering_factor(std::size_t x, const ClusterFamily& family,
                                   const SimilarityMatrix& s);

// Promotes unclustered points to singleton clusters, lets each one with a
// unique best cluster and clustering factor >= rho join it, then drops
// singletons and duplicates. Coverage never decreases; mutually close
// unclustered points can pair up through their promoted singletons.
ClusterFamily expand(ClusterFamily family, const SimilarityMatrix& s, double rho = 0.5);

// Forces multi-members to pick the cluster whose non-multi-member core they
// contribute most to; ties and empty cores leave the point untouched.
// Clusters reduced to one member and duplicates are dropped afterwards.
ClusterFamily eliminate_multimembership(ClusterFamily family, const SimilarityMatrix& s);

}  // namespace aqcm
