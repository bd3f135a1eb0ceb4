#include "aqcm/synthgen.hpp"

#include <cmath>
#include <numbers>

namespace aqcm {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("bound must be positive");
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / bound * bound;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % bound;
}

MixtureSample gaussian_mixture(const MixtureSpec& spec) {
  const std::size_t k = spec.centers.size();
  if (k == 0 || spec.cov_scales.size() != k || spec.sizes.size() != k)
    throw std::invalid_argument("mixture spec lists must be non-empty and equal length");
  for (const auto& c : spec.centers)
    if (c.size() != spec.dim) throw std::invalid_argument("center dimension mismatch");
  for (double cs : spec.cov_scales)
    if (!(cs > 0.0)) throw std::invalid_argument("covariance scale must be positive");
  for (std::size_t sz : spec.sizes)
    if (sz == 0) throw std::invalid_argument("component sizes must be positive");

  Rng rng(spec.seed);
  MixtureSample out;
  for (std::size_t comp = 0; comp < k; ++comp) {
    const double sigma = std::sqrt(spec.cov_scales[comp]);
    for (std::size_t i = 0; i < spec.sizes[comp]; ++i) {
      std::vector<double> p(spec.dim);
      for (std::size_t d = 0; d < spec.dim; ++d)
        p[d] = spec.centers[comp][d] + sigma * rng.normal();
      out.points.push_back(std::move(p));
      out.labels.push_back(static_cast<int>(comp));
    }
  }
  return out;
}

SimilarityMatrix euclidean_similarity(const std::vector<std::vector<double>>& points) {
  const std::size_t n = points.size();
  if (n < 2) throw std::invalid_argument("need at least 2 points");
  for (const auto& p : points)
    if (p.size() != points[0].size()) throw std::invalid_argument("point dimension mismatch");

  std::vector<double> dist(n * n, 0.0);
  double d_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t d = 0; d < points[i].size(); ++d) {
        const double diff = points[i][d] - points[j][d];
        sq += diff * diff;
      }
      const double dst = std::sqrt(sq);
      dist[i * n + j] = dst;
      d_max = std::max(d_max, dst);
    }
  }
  if (d_max == 0.0) throw numeric_error("all points coincide; similarity shift undefined");

  SimilarityMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.set(i, i, 1.0);
    for (std::size_t j = i + 1; j < n; ++j) s.set(i, j, 1.0 - dist[i * n + j] / d_max);
  }
  return s;
}

PlantedPartition planted_partition(const std::vector<std::size_t>& block_sizes, double p_in,
                                   double p_out, std::uint64_t seed) {
  if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
    throw std::invalid_argument("edge probabilities must lie in [0,1]");

  std::size_t n = 0;
  for (std::size_t b : block_sizes) n += b;

  PlantedPartition out{AdjacencyGraph(n, false), {}};
  out.labels.reserve(n);
  for (std::size_t b = 0; b < block_sizes.size(); ++b)
    for (std::size_t i = 0; i < block_sizes[b]; ++i) out.labels.push_back(static_cast<int>(b));

  Rng rng(seed);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double p = out.labels[u] == out.labels[v] ? p_in : p_out;
      // uniform() lies in (0,1], so p == 1 always fires and p == 0 never does.
      if (rng.uniform() <= p) out.graph.add_edge(u, v, 1.0);
    }
  }
  return out;
}

}  // namespace aqcm
