#include "aqcm/engine.hpp"

#include <algorithm>
#include <numeric>

namespace aqcm {

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  if (m % 2 == 1) return v[m / 2];
  return 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

}  // namespace

SeedList select_seeds(const SimilarityMatrix& s) {
  const std::size_t n = s.size();
  if (n < 2) throw std::invalid_argument("seed selection needs at least 2 vertices");

  std::vector<std::vector<char>> nominates(n, std::vector<char>(n, 0));
  std::vector<std::size_t> order(n - 1);
  for (std::size_t v = 0; v < n; ++v) {
    order.clear();
    for (std::size_t u = 0; u < n; ++u)
      if (u != v) order.push_back(u);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double wa = s(v, a), wb = s(v, b);
      if (wa != wb) return wa > wb;
      return a < b;
    });

    std::size_t t = 1;
    if (order.size() >= 2) {
      std::vector<double> diffs(order.size() - 1);
      for (std::size_t i = 0; i + 1 < order.size(); ++i)
        diffs[i] = s(v, order[i]) - s(v, order[i + 1]);
      const double med = median_of(diffs);
      for (std::size_t i = 0; i < diffs.size(); ++i) {
        if (diffs[i] >= med) {
          t = i + 1;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < t; ++i) nominates[v][order[i]] = 1;
  }

  SeedList seeds;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (nominates[u][v] && nominates[v][u]) seeds.push_back({u, v, s(u, v)});

  std::stable_sort(seeds.begin(), seeds.end(), [](const SeedEdge& a, const SeedEdge& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });
  return seeds;
}

ClusterFamily grow_clusters(const SimilarityMatrix& s, SeedList seeds, const GrowthConfig& cfg) {
  const std::size_t n = s.size();
  if (cfg.tau < 0) throw std::invalid_argument("tau must be non-negative");

  ClusterFamily family;
  std::vector<char> removed(seeds.size(), 0);
  std::vector<char> in_cluster(n, 0);
  std::vector<double> cont_sum(n, 0.0);

  for (std::size_t si = 0; si < seeds.size(); ++si) {
    if (removed[si]) continue;
    const SeedEdge seed = seeds[si];

    Cluster members{seed.u, seed.v};
    std::sort(members.begin(), members.end());
    std::fill(in_cluster.begin(), in_cluster.end(), 0);
    in_cluster[seed.u] = in_cluster[seed.v] = 1;
    double pair_sum = s(seed.u, seed.v);
    for (std::size_t x = 0; x < n; ++x)
      cont_sum[x] = in_cluster[x] ? 0.0 : s(x, seed.u) + s(x, seed.v);

    while (members.size() < n) {
      const double k = static_cast<double>(members.size());
      const double alpha = 1.0 - 1.0 / (2.0 * (k + 1.0));
      const double den = pair_sum / (0.5 * k * (k - 1.0));

      double q = -1.0;
      for (std::size_t x = 0; x < n; ++x) {
        if (in_cluster[x]) continue;
        const double c = cont_sum[x] / k;
        if (c > q) q = c;
      }
      if (q < alpha * den) break;

      // Everything within tau of the best joins in one round; with tau == 0
      // the exact maxima still join so the loop always makes progress.
      Cluster joins;
      for (std::size_t x = 0; x < n; ++x) {
        if (in_cluster[x]) continue;
        const double c = cont_sum[x] / k;
        if (c > q - cfg.tau || c == q) joins.push_back(x);
      }
      // New pairs split into cluster-to-join edges (already accumulated in
      // cont_sum) and edges inside the join set, each counted once.
      for (std::size_t x : joins) pair_sum += cont_sum[x];
      for (std::size_t i = 0; i < joins.size(); ++i)
        for (std::size_t j = i + 1; j < joins.size(); ++j) pair_sum += s(joins[i], joins[j]);
      for (std::size_t x : joins) {
        members.insert(std::lower_bound(members.begin(), members.end(), x), x);
        in_cluster[x] = 1;
      }
      for (std::size_t x = 0; x < n; ++x) {
        if (in_cluster[x]) continue;
        for (std::size_t j : joins) cont_sum[x] += s(x, j);
      }
    }

    family.push_back(members);
    for (std::size_t sj = si; sj < seeds.size(); ++sj)
      if (!removed[sj] && in_cluster[seeds[sj].u] && in_cluster[seeds[sj].v]) removed[sj] = 1;
  }
  return family;
}

namespace {

struct RankedCluster {
  Cluster members;
  double den;
};

std::vector<RankedCluster> rank_by_density(ClusterFamily family, const SimilarityMatrix& s) {
  std::vector<RankedCluster> ranked;
  ranked.reserve(family.size());
  for (Cluster& c : family) ranked.push_back({std::move(c), 0.0});
  for (RankedCluster& r : ranked) r.den = density(r.members, s);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedCluster& a, const RankedCluster& b) { return a.den > b.den; });
  return ranked;
}

bool degenerate_overlap(const Cluster& a, const Cluster& b) {
  const std::size_t ov = overlap_size(a, b);
  return static_cast<double>(ov) > 0.5 * static_cast<double>(std::min(a.size(), b.size()));
}

ClusterFamily dedupe(ClusterFamily family) {
  ClusterFamily out;
  for (Cluster& c : family) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

ClusterFamily adjust_first(ClusterFamily family, const SimilarityMatrix& s) {
  std::vector<RankedCluster> ranked = rank_by_density(std::move(family), s);
  std::size_t t = 0;
  while (t < ranked.size()) {
    for (std::size_t z = ranked.size(); z-- > t + 1;) {
      if (degenerate_overlap(ranked[z].members, ranked[t].members))
        ranked.erase(ranked.begin() + static_cast<std::ptrdiff_t>(z));
    }
    ++t;
  }
  ClusterFamily out;
  out.reserve(ranked.size());
  for (RankedCluster& r : ranked) out.push_back(std::move(r.members));
  return out;
}

ClusterFamily adjust_merge(ClusterFamily family, const SimilarityMatrix& base) {
  std::vector<RankedCluster> ranked = rank_by_density(dedupe(std::move(family)), base);

  std::size_t t = 0;
  while (t < ranked.size()) {
    std::vector<std::size_t> overlapping;
    for (std::size_t z = t + 1; z < ranked.size(); ++z)
      if (degenerate_overlap(ranked[z].members, ranked[t].members)) overlapping.push_back(z);
    if (overlapping.empty()) {
      ++t;
      continue;
    }

    std::size_t best = overlapping.front();
    Cluster best_union = cluster_union(ranked[t].members, ranked[best].members);
    double best_den = density(best_union, base);
    for (std::size_t i = 1; i < overlapping.size(); ++i) {
      Cluster u = cluster_union(ranked[t].members, ranked[overlapping[i]].members);
      const double d = density(u, base);
      if (d > best_den) {
        best = overlapping[i];
        best_union = std::move(u);
        best_den = d;
      }
    }

    ranked.erase(ranked.begin() + static_cast<std::ptrdiff_t>(best));
    ranked.erase(ranked.begin() + static_cast<std::ptrdiff_t>(t));
    auto pos = std::find_if(ranked.begin(), ranked.end(),
                            [&](const RankedCluster& r) { return r.den < best_den; });
    ranked.insert(pos, {std::move(best_union), best_den});

    // A merge can create fresh overlap with clusters already passed, so the
    // scan restarts from the densest cluster.
    t = 0;
  }

  ClusterFamily out;
  out.reserve(ranked.size());
  for (RankedCluster& r : ranked) out.push_back(std::move(r.members));
  return dedupe(std::move(out));
}

ContractResult contract(const std::vector<Cluster>& vertex_sets, const SimilarityMatrix& base) {
  const std::size_t m = vertex_sets.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (vertex_sets[i].empty()) throw std::invalid_argument("contraction of an empty cluster");
    for (std::size_t j = i + 1; j < m; ++j)
      if (vertex_sets[i] == vertex_sets[j])
        throw std::invalid_argument("duplicate clusters passed to contraction");
  }

  SimilarityMatrix out(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Cluster& ci = vertex_sets[i];
      const Cluster& cj = vertex_sets[j];
      // Mean over unordered pairs {u,v} with u in C_i and v in C_j: covers the
      // exclusive-to-exclusive, exclusive-to-intersection and intersection-
      // internal pairs exactly once each.
      double sum = 0.0;
      for (std::size_t u : ci)
        for (std::size_t v : cj)
          if (u != v) sum += base(u, v);
      const std::size_t inter = overlap_size(ci, cj);
      double inter_sum = 0.0;
      if (inter >= 2) {
        Cluster shared;
        std::set_intersection(ci.begin(), ci.end(), cj.begin(), cj.end(),
                              std::back_inserter(shared));
        for (std::size_t a = 0; a < shared.size(); ++a)
          for (std::size_t b = a + 1; b < shared.size(); ++b) sum -= base(shared[a], shared[b]);
        inter_sum = static_cast<double>(inter) * static_cast<double>(inter - 1) / 2.0;
      }
      const double pairs =
          static_cast<double>(ci.size()) * static_cast<double>(cj.size()) -
          static_cast<double>(inter) - inter_sum;
      if (pairs <= 0)
        throw std::invalid_argument("contracted pair with no connecting base edges");
      out.set(i, j, sum / pairs);
    }
  }
  return {std::move(out), vertex_sets};
}

ContractResult contract(const ClusterFamily& clusters, const std::vector<std::size_t>& singletons,
                        const SimilarityMatrix& base) {
  std::vector<Cluster> sets = clusters;
  for (std::size_t v : singletons) sets.push_back(Cluster{v});
  return contract(sets, base);
}

namespace {

struct LevelEntry {
  Cluster members;
  bool pass_through_singleton = false;
};

std::vector<Cluster> sorted_sets(std::vector<Cluster> sets) {
  std::sort(sets.begin(), sets.end());
  return sets;
}

}  // namespace

HierarchyTree build_hierarchy(const SimilarityMatrix& base, const GrowthConfig& cfg) {
  const std::size_t n = base.size();
  if (n < 2) throw std::invalid_argument("hierarchy needs at least 2 data points");
  if (cfg.max_levels < 1) throw std::invalid_argument("max_levels must be at least 1");

  HierarchyTree tree;
  std::vector<std::size_t> prev_ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    tree.nodes.push_back({i, 0, Cluster{i}, 1.0, false});
    prev_ids[i] = i;
  }

  Cluster everything(n);
  std::iota(everything.begin(), everything.end(), 0);

  std::vector<Cluster> cur_base;
  cur_base.reserve(n);
  for (std::size_t i = 0; i < n; ++i) cur_base.push_back(Cluster{i});
  SimilarityMatrix cur = base;

  auto add_node = [&](int level, Cluster members, bool unclustered) {
    const std::size_t id = tree.nodes.size();
    const double den = members.size() == 1 ? 1.0 : density(members, base);
    tree.nodes.push_back({id, level, std::move(members), den, unclustered});
    return id;
  };
  auto connect_contained = [&](std::size_t parent_id) {
    bool any = false;
    for (std::size_t child : prev_ids) {
      if (is_subset(tree.nodes[child].members, tree.nodes[parent_id].members)) {
        tree.edges.push_back({parent_id, child});
        any = true;
      }
    }
    return any;
  };
  auto append_root = [&](int level) {
    const std::size_t root_id = add_node(level, everything, false);
    connect_contained(root_id);
    tree.root = root_id;
  };

  int level = 0;
  while (true) {
    ++level;
    if (level > cfg.max_levels) {
      append_root(level);
      break;
    }

    const SeedList seeds = select_seeds(cur);
    ClusterFamily grown = grow_clusters(cur, seeds, cfg);

    // Growth works on contracted vertices; adjustment and everything after
    // interpret clusters as base-data subsets.
    ClusterFamily base_fam;
    base_fam.reserve(grown.size());
    for (const Cluster& c : grown) {
      Cluster b;
      for (std::size_t v : c) b = cluster_union(b, cur_base[v]);
      base_fam.push_back(std::move(b));
    }
    ClusterFamily adjusted =
        level == 1 ? adjust_first(std::move(base_fam), base) : adjust_merge(std::move(base_fam), base);

    if (adjusted.size() == 1 && adjusted.front().size() == n) {
      append_root(level);
      break;
    }

    std::vector<LevelEntry> entries;
    for (Cluster& c : adjusted) entries.push_back({std::move(c), false});
    for (std::size_t v = 0; v < cur_base.size(); ++v) {
      const bool absorbed = std::any_of(entries.begin(), entries.end(), [&](const LevelEntry& e) {
        return !e.pass_through_singleton && is_subset(cur_base[v], e.members);
      });
      if (!absorbed) entries.push_back({cur_base[v], cur_base[v].size() == 1});
    }
    // Drop duplicate member sets, preferring the cluster over a pass-through.
    std::vector<LevelEntry> unique_entries;
    for (LevelEntry& e : entries) {
      const bool dup = std::any_of(unique_entries.begin(), unique_entries.end(),
                                   [&](const LevelEntry& u) { return u.members == e.members; });
      if (!dup) unique_entries.push_back(std::move(e));
    }

    std::vector<Cluster> next_sets;
    next_sets.reserve(unique_entries.size());
    for (const LevelEntry& e : unique_entries) next_sets.push_back(e.members);

    if (sorted_sets(next_sets) == sorted_sets(cur_base)) {
      // No growth and no merge at this level; force a covering root.
      append_root(level);
      break;
    }

    std::vector<std::size_t> new_ids;
    new_ids.reserve(unique_entries.size());
    for (LevelEntry& e : unique_entries)
      new_ids.push_back(add_node(level, std::move(e.members), e.pass_through_singleton));
    for (std::size_t id : new_ids) connect_contained(id);

    ContractResult contracted = contract(next_sets, base);
    cur = std::move(contracted.matrix);
    cur_base = std::move(contracted.vertex_to_base);
    prev_ids = std::move(new_ids);
  }

  tree.rebuild_adjacency();
  validate(tree, base);
  return tree;
}

}  // namespace aqcm
