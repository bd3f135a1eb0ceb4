#include "aqcm/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace aqcm {

namespace {

bool has_edge(const AdjacencyGraph& g, std::size_t u, std::size_t v) {
  return g.a(u, v) > 0.0 || g.a(v, u) > 0.0;
}

std::vector<long> assignment_of(const AdjacencyGraph& g, const ClusterFamily& family) {
  std::vector<long> block(g.n, -1);
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].empty()) throw std::invalid_argument("empty cluster");
    for (std::size_t m : family[i]) {
      if (m >= g.n) throw std::out_of_range("cluster member out of graph range");
      if (block[m] != -1) throw std::invalid_argument("family is not a partition");
      block[m] = static_cast<long>(i);
    }
  }
  return block;
}

double comb2(double x) { return 0.5 * x * (x - 1.0); }

}  // namespace

BlockProbabilityMatrix edge_probabilities(const AdjacencyGraph& g, const ClusterFamily& family) {
  const std::vector<long> block = assignment_of(g, family);
  const std::size_t s = family.size();

  std::vector<std::vector<double>> counts(s, std::vector<double>(s, 0.0));
  for (std::size_t u = 0; u < g.n; ++u) {
    for (std::size_t v = u + 1; v < g.n; ++v) {
      if (block[u] < 0 || block[v] < 0 || !has_edge(g, u, v)) continue;
      const auto bu = static_cast<std::size_t>(block[u]);
      const auto bv = static_cast<std::size_t>(block[v]);
      counts[bu][bv] += 1.0;
      if (bu != bv) counts[bv][bu] += 1.0;
    }
  }

  BlockProbabilityMatrix out;
  out.p.assign(s, std::vector<double>(s, 0.0));
  out.diagonal_defined.assign(s, 1);
  for (const Cluster& c : family) out.cluster_sizes.push_back(c.size());
  for (std::size_t l = 0; l < s; ++l) {
    for (std::size_t k = 0; k < s; ++k) {
      if (l == k) {
        const double possible = comb2(static_cast<double>(family[l].size()));
        if (possible <= 0.0) {
          out.p[l][l] = 0.0;
          out.diagonal_defined[l] = 0;
        } else {
          out.p[l][l] = counts[l][l] / possible;
        }
      } else {
        const double possible =
            static_cast<double>(family[l].size()) * static_cast<double>(family[k].size());
        out.p[l][k] = counts[l][k] / possible;
      }
    }
  }
  return out;
}

SeparationRatios separation_ratios(const BlockProbabilityMatrix& bp) {
  const std::size_t s = bp.p.size();
  SeparationRatios out;
  out.delta.assign(s, std::vector<double>(s, 0.0));
  out.delta_min.assign(s, 0.0);
  out.defined.assign(s, 1);
  for (std::size_t l = 0; l < s; ++l) {
    const double pll = bp.p[l][l];
    if (pll <= 0.0) {
      out.defined[l] = 0;
      continue;
    }
    double mn = 1.0;
    for (std::size_t k = 0; k < s; ++k) {
      if (k == l) continue;
      out.delta[l][k] = (pll - bp.p[l][k]) / pll;
      mn = std::min(mn, out.delta[l][k]);
    }
    out.delta_min[l] = s > 1 ? mn : 1.0;
  }
  return out;
}

double modularity(const AdjacencyGraph& g, const ClusterFamily& family) {
  const std::vector<long> block = assignment_of(g, family);

  double m = 0.0;
  std::vector<double> degree(g.n, 0.0);
  for (std::size_t u = 0; u < g.n; ++u) {
    for (std::size_t v = u + 1; v < g.n; ++v) {
      if (!has_edge(g, u, v)) continue;
      m += 1.0;
      degree[u] += 1.0;
      degree[v] += 1.0;
    }
  }
  if (m == 0.0) throw numeric_error("modularity of an edgeless graph");

  const std::size_t s = family.size();
  std::vector<double> internal(s, 0.0);
  for (std::size_t u = 0; u < g.n; ++u)
    for (std::size_t v = u + 1; v < g.n; ++v)
      if (block[u] >= 0 && block[u] == block[v] && has_edge(g, u, v))
        internal[static_cast<std::size_t>(block[u])] += 1.0;

  double q = 0.0;
  for (std::size_t l = 0; l < s; ++l) {
    double deg_sum = 0.0;
    for (std::size_t u : family[l]) deg_sum += degree[u];
    const double a_l = deg_sum / (2.0 * m);
    q += internal[l] / m - a_l * a_l;
  }
  return q;
}

double adjusted_rand_index(const std::vector<int>& pred, const std::vector<int>& truth) {
  if (pred.size() != truth.size())
    throw std::invalid_argument("label vectors differ in length");
  const double n = static_cast<double>(pred.size());
  if (pred.empty()) throw std::invalid_argument("empty label vectors");

  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> row, col;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    joint[{pred[i], truth[i]}] += 1.0;
    row[pred[i]] += 1.0;
    col[truth[i]] += 1.0;
  }

  double sum_joint = 0.0, sum_row = 0.0, sum_col = 0.0;
  for (const auto& [k, v] : joint) sum_joint += comb2(v);
  for (const auto& [k, v] : row) sum_row += comb2(v);
  for (const auto& [k, v] : col) sum_col += comb2(v);

  const double expected = sum_row * sum_col / comb2(n);
  const double maximum = 0.5 * (sum_row + sum_col);
  if (maximum == expected) return sum_joint == expected ? 1.0 : 0.0;
  return (sum_joint - expected) / (maximum - expected);
}

SizeStats cluster_size_stats(const ClusterFamily& family) {
  if (family.empty()) throw std::invalid_argument("size stats of an empty family");
  std::vector<std::size_t> sizes;
  sizes.reserve(family.size());
  for (const Cluster& c : family) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());

  SizeStats st;
  st.min = sizes.front();
  st.max = sizes.back();
  double sum = 0.0;
  for (std::size_t s : sizes) sum += static_cast<double>(s);
  st.mean = sum / static_cast<double>(sizes.size());
  double var = 0.0;
  for (std::size_t s : sizes) {
    const double d = static_cast<double>(s) - st.mean;
    var += d * d;
  }
  st.stddev = sizes.size() > 1 ? std::sqrt(var / static_cast<double>(sizes.size() - 1)) : 0.0;
  const std::size_t m = sizes.size();
  st.median = m % 2 == 1 ? static_cast<double>(sizes[m / 2])
                         : 0.5 * static_cast<double>(sizes[m / 2 - 1] + sizes[m / 2]);
  return st;
}

}  // namespace aqcm
