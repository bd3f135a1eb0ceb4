#pragma once

// Shared fixtures and independent oracles for the unit and acceptance suites.
// Oracles are deliberately written against the definitions, not the library
// code paths they check.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "aqcm/core.hpp"
#include "aqcm/cut.hpp"
#include "aqcm/synthgen.hpp"

namespace testsup {

inline aqcm::SimilarityMatrix make_similarity(
    std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& entries,
    double fill = 0.0) {
  aqcm::SimilarityMatrix s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s.set(i, j, fill);
  for (const auto& [i, j, v] : entries) s.set(i, j, v);
  return s;
}

inline aqcm::ClusterFamily sorted_family(aqcm::ClusterFamily f) {
  std::sort(f.begin(), f.end());
  return f;
}

// ---------------------------------------------------------------------------
// Exhaustive minimum-mean edge cut over a rooted weighted tree. A valid cut
// picks, independently on every branch, either the branch edge itself or
// (when the edge head is internal) a valid cut of the subtree below it.
// ---------------------------------------------------------------------------

struct CutOption {
  double sum = 0.0;
  std::size_t count = 0;
};

inline std::vector<CutOption> oracle_subtree_cuts(
    const aqcm::WeightedCutTree& t, std::size_t vertex,
    const std::map<std::size_t, std::vector<std::size_t>>& children) {
  std::vector<std::vector<CutOption>> per_edge;
  for (std::size_t ei : children.at(vertex)) {
    const aqcm::WeightedEdge& e = t.edges[ei];
    std::vector<CutOption> options{{e.weight, 1}};
    if (children.count(e.child) && !children.at(e.child).empty()) {
      for (const CutOption& deeper : oracle_subtree_cuts(t, e.child, children))
        options.push_back(deeper);
    }
    per_edge.push_back(std::move(options));
  }
  std::vector<CutOption> combos{{0.0, 0}};
  for (const auto& options : per_edge) {
    std::vector<CutOption> next;
    for (const CutOption& c : combos)
      for (const CutOption& o : options) next.push_back({c.sum + o.sum, c.count + o.count});
    combos = std::move(next);
  }
  return combos;
}

inline double oracle_min_mean_cut(const aqcm::WeightedCutTree& t) {
  std::map<std::size_t, std::vector<std::size_t>> children;
  for (std::size_t id : t.node_ids) children[id];
  for (std::size_t i = 0; i < t.edges.size(); ++i) children[t.edges[i].parent].push_back(i);
  double best = std::numeric_limits<double>::infinity();
  for (const CutOption& c : oracle_subtree_cuts(t, t.root, children))
    best = std::min(best, c.sum / static_cast<double>(c.count));
  return best;
}

// ---------------------------------------------------------------------------
// Pair-counting adjusted Rand index.
// ---------------------------------------------------------------------------

inline double oracle_ari(const std::vector<int>& pred, const std::vector<int>& truth) {
  double a = 0, b = 0, c = 0, d = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = i + 1; j < pred.size(); ++j) {
      const bool same_p = pred[i] == pred[j];
      const bool same_t = truth[i] == truth[j];
      if (same_p && same_t)
        a += 1;
      else if (same_p && !same_t)
        b += 1;
      else if (!same_p && same_t)
        c += 1;
      else
        d += 1;
    }
  }
  const double denom = (a + b) * (b + d) + (a + c) * (c + d);
  if (denom == 0.0) return (b == 0 && c == 0) ? 1.0 : 0.0;
  return 2.0 * (a * d - b * c) / denom;
}

// ---------------------------------------------------------------------------
// Literal edge-set classification for the contraction weight: every base pair
// is placed in exactly one of the four cross sets (or none) by membership.
// ---------------------------------------------------------------------------

inline double oracle_contract_mean(const aqcm::Cluster& ci, const aqcm::Cluster& cj,
                                   const aqcm::SimilarityMatrix& s) {
  auto in = [](const aqcm::Cluster& c, std::size_t x) {
    return std::binary_search(c.begin(), c.end(), x);
  };
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t u = 0; u < s.size(); ++u) {
    for (std::size_t v = u + 1; v < s.size(); ++v) {
      const bool ui = in(ci, u), uj = in(cj, u), vi = in(ci, v), vj = in(cj, v);
      const bool beta = ((ui && !uj && vj && !vi) || (vi && !vj && uj && !ui));
      const bool gamma_delta = ((ui != uj) && vi && vj) || ((vi != vj) && ui && uj);
      const bool sigma = ui && uj && vi && vj;
      if (beta || gamma_delta || sigma) {
        sum += s(u, v);
        ++count;
      }
    }
  }
  return sum / static_cast<double>(count);
}

// ---------------------------------------------------------------------------
// Random instances.
// ---------------------------------------------------------------------------

// Rooted weighted tree with at most `max_internal` contractible edges; every
// edge carries a positive weight, leaves form the frontier.
inline aqcm::WeightedCutTree random_cut_tree(aqcm::Rng& rng, std::size_t max_internal) {
  while (true) {
    const std::size_t k = 3 + rng.below(14);  // node count
    aqcm::WeightedCutTree t;
    t.root = 0;
    for (std::size_t i = 0; i < k; ++i) t.node_ids.push_back(i);
    std::vector<std::size_t> child_count(k, 0);
    for (std::size_t i = 1; i < k; ++i) {
      const auto parent = static_cast<std::size_t>(rng.below(i));
      t.edges.push_back({parent, i, 0.5 + 9.5 * rng.uniform()});
      child_count[parent]++;
    }
    std::size_t internal = 0;
    for (const aqcm::WeightedEdge& e : t.edges)
      if (child_count[e.child] > 0) ++internal;
    if (internal >= 1 && internal <= max_internal) return t;
  }
}

struct BlockSimilarity {
  aqcm::SimilarityMatrix s;
  std::vector<aqcm::Cluster> blocks;
  std::vector<int> labels;
};

// Planted block similarity with the in-block value range strictly above the
// out-of-block range.
inline BlockSimilarity random_block_similarity(aqcm::Rng& rng, std::size_t min_blocks = 3,
                                               std::size_t max_blocks = 6,
                                               std::size_t min_size = 3,
                                               std::size_t max_size = 9) {
  const std::size_t nblocks = min_blocks + rng.below(max_blocks - min_blocks + 1);
  std::vector<std::size_t> sizes;
  std::size_t n = 0;
  for (std::size_t b = 0; b < nblocks; ++b) {
    sizes.push_back(min_size + rng.below(max_size - min_size + 1));
    n += sizes.back();
  }
  BlockSimilarity out{aqcm::SimilarityMatrix(n), {}, {}};
  std::size_t start = 0;
  for (std::size_t b = 0; b < nblocks; ++b) {
    aqcm::Cluster block;
    for (std::size_t i = 0; i < sizes[b]; ++i) {
      block.push_back(start + i);
      out.labels.push_back(static_cast<int>(b));
    }
    out.blocks.push_back(block);
    start += sizes[b];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same = out.labels[i] == out.labels[j];
      const double v = same ? 0.65 + 0.30 * rng.uniform() : 0.05 + 0.30 * rng.uniform();
      out.s.set(i, j, v);
    }
  }
  return out;
}

// Nine well-separated gaussian components totalling 595 points, mirroring an
// abstract color-cube style data set.
inline aqcm::MixtureSpec scaled_mixture_spec(std::uint64_t seed) {
  aqcm::Rng rng(seed);
  aqcm::MixtureSpec spec;
  spec.dim = 3;
  spec.seed = seed + 1;

  while (spec.centers.size() < 9) {
    std::vector<double> c{rng.uniform(), rng.uniform(), rng.uniform()};
    bool ok = true;
    for (const auto& other : spec.centers) {
      double sq = 0.0;
      for (std::size_t d = 0; d < 3; ++d) sq += (c[d] - other[d]) * (c[d] - other[d]);
      if (std::sqrt(sq) < 0.42) {
        ok = false;
        break;
      }
    }
    if (ok) spec.centers.push_back(std::move(c));
  }
  std::size_t total = 0;
  for (std::size_t i = 0; i < 9; ++i) {
    spec.cov_scales.push_back(0.0004 + 0.0008 * rng.uniform());  // sigma 0.02 .. 0.035
    spec.sizes.push_back(40 + rng.below(55));
    total += spec.sizes.back();
  }
  // Nudge the last components so the total lands on 595.
  std::size_t i = 8;
  while (total != 595) {
    if (total > 595 && spec.sizes[i] > 30) {
      spec.sizes[i]--;
      total--;
    } else if (total < 595) {
      spec.sizes[i]++;
      total++;
    }
    i = (i + 8) % 9;
  }
  return spec;
}

}  // namespace testsup
