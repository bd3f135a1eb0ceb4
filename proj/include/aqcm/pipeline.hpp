#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "aqcm/core.hpp"
#include "aqcm/diffusion.hpp"
#include "aqcm/tree.hpp"

namespace aqcm {

enum class InputFormat { points, similarity, edgelist };
enum class SimilarityMethod { euclidean, diffusion, precomputed };

struct PipelineConfig {
  std::string input_path;
  InputFormat format = InputFormat::points;
  std::optional<SimilarityMethod> similarity;  // inferred from format when unset
  double tau = 0.008;
  double rho = 0.5;
  double diffusion_c = 1.63;
  double diffusion_tol = 1e-12;
  bool iterate = false;
  int max_refine_iterations = 10;
  int max_levels = 100;
  std::uint64_t seed = 0;  // recorded in artifact metadata; the pipeline itself draws nothing
  std::string out_dir;
  std::string truth_path;  // optional labels for agreement scoring
};

struct PipelineResult {
  HierarchyTree tree;
  ClusterFamily clusters;
  std::vector<std::size_t> unclustered;
  std::vector<std::string> artifacts;  // files written, relative to out_dir
};

// Ingests the input, builds similarity per the configured method, runs either
// the single pass (hierarchy -> edge cut -> post-process) or the iterative
// refinement loop, and writes tree.json, clusters.csv, tree.dot, order.txt
// and metrics.json into out_dir. On failure after partial writes a MANIFEST
// of the flushed artifacts is left behind.
PipelineResult run_pipeline(const PipelineConfig& cfg);

// Refinement loop: hierarchy -> edge cut -> post-process -> contract against
// the original similarity, repeated until one cluster remains or the
// iteration bound is hit. Each pass's clustering becomes one level of the
// returned simplified hierarchy.
HierarchyTree iterate_refine(const SimilarityMatrix& s, const PipelineConfig& cfg);

// The clustering recorded at a given level (non-pass-through nodes).
ClusterFamily clusters_at_level(const HierarchyTree& t, int level);

}  // namespace aqcm
