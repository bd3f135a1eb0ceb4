#pragma once

#include <cstdint>
#include <random>

#include "aqcm/core.hpp"
#include "aqcm/diffusion.hpp"

namespace aqcm {

// mt19937_64 with explicit double and gaussian derivations, so the stream per
// seed is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in (0, 1].
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller.
  double normal();

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline constexpr const char* kPrngId = "mt19937_64+box-muller";

struct MixtureSpec {
  std::size_t dim = 3;
  std::vector<std::vector<double>> centers;
  std::vector<double> cov_scales;  // isotropic covariance cov_scale * I per component
  std::vector<std::size_t> sizes;
  std::uint64_t seed = 0;
};

struct MixtureSample {
  std::vector<std::vector<double>> points;
  std::vector<int> labels;  // component index per point
};

MixtureSample gaussian_mixture(const MixtureSpec& spec);

// Similarity as negative Euclidean distance shifted into [0, 1]: the farthest
// pair scores 0, coincident points score 1.
SimilarityMatrix euclidean_similarity(const std::vector<std::vector<double>>& points);

struct PlantedPartition {
  AdjacencyGraph graph;
  std::vector<int> labels;
};

// Undirected simple graph with Bernoulli(p_in) edges inside blocks and
// Bernoulli(p_out) edges between them; deterministic per seed.
PlantedPartition planted_partition(const std::vector<std::size_t>& block_sizes, double p_in,
                                   double p_out, std::uint64_t seed);

}  // namespace aqcm
