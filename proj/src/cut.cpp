#include "aqcm/cut.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace aqcm {

PruneResult prune_unclustered(const HierarchyTree& t) {
  const std::size_t n_nodes = t.nodes.size();
  std::vector<char> keep(n_nodes, 1);
  for (const TreeNode& node : t.nodes)
    if (node.unclustered) keep[node.id] = 0;

  // Leaves whose every parent was a pruned pass-through have no place left in
  // the tree; their base point may still appear as a member of some cluster.
  std::vector<char> has_parent(n_nodes, 0);
  for (const TreeEdge& e : t.edges)
    if (keep[e.parent] && keep[e.child]) has_parent[e.child] = 1;
  for (const TreeNode& node : t.nodes)
    if (node.level == 0 && keep[node.id] && !has_parent[node.id] && node.id != t.root)
      keep[node.id] = 0;

  bool any_cluster = false;
  for (const TreeNode& node : t.nodes)
    if (keep[node.id] && node.id != t.root && node.members.size() >= 2) any_cluster = true;
  if (!any_cluster) throw numeric_error("no clusterable structure");

  PruneResult out;
  std::vector<std::size_t> remap(n_nodes, 0);
  for (const TreeNode& node : t.nodes) {
    if (!keep[node.id]) continue;
    remap[node.id] = out.tree.nodes.size();
    TreeNode copy = node;
    copy.id = remap[node.id];
    out.tree.nodes.push_back(std::move(copy));
  }
  for (const TreeEdge& e : t.edges)
    if (keep[e.parent] && keep[e.child]) out.tree.edges.push_back({remap[e.parent], remap[e.child]});
  out.tree.root = remap[t.root];
  out.tree.rebuild_adjacency();

  const std::size_t n = t.base_size();
  std::vector<char> covered(n, 0);
  for (const TreeNode& node : out.tree.nodes) {
    if (node.id == out.tree.root || node.level == 0) continue;
    for (std::size_t m : node.members) covered[m] = 1;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!covered[i]) out.unclustered.push_back(i);
  return out;
}

WeightedCutTree weight_edges(const HierarchyTree& t, double epsilon) {
  WeightedCutTree out;
  out.root = t.root;
  std::vector<char> retained(t.nodes.size(), 0);
  for (const TreeNode& node : t.nodes) {
    if (node.level >= 1 && !node.unclustered) {
      retained[node.id] = 1;
      out.node_ids.push_back(node.id);
    }
  }
  for (const TreeEdge& e : t.edges) {
    if (!retained[e.parent] || !retained[e.child]) continue;
    const TreeNode& parent = t.nodes[e.parent];
    const TreeNode& child = t.nodes[e.child];
    const double drop = child.density * child.density - parent.density * parent.density;
    const double w = static_cast<double>(child.members.size()) / std::max(drop, epsilon);
    out.edges.push_back({e.parent, e.child, w});
  }
  return out;
}

WeightedCutTree max_arborescence(const WeightedCutTree& t) {
  std::map<std::size_t, WeightedEdge> best;
  for (const WeightedEdge& e : t.edges) {
    auto it = best.find(e.child);
    if (it == best.end() || e.weight > it->second.weight ||
        (e.weight == it->second.weight && e.parent < it->second.parent))
      best[e.child] = e;
  }
  WeightedCutTree out;
  out.root = t.root;
  out.node_ids = t.node_ids;
  for (std::size_t id : t.node_ids)
    if (auto it = best.find(id); it != best.end()) out.edges.push_back(it->second);
  return out;
}

EdgeCut min_average_cut(const WeightedCutTree& tmax) {
  const std::size_t m = tmax.edges.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Edges keep their original endpoints for reporting; contraction reroutes
  // the vertex that currently owns an edge as one of its out-edges.
  std::map<std::size_t, std::vector<std::size_t>> out_edges;  // vertex -> edge indices
  std::vector<std::size_t> cur_tail(m, 0);
  for (std::size_t id : tmax.node_ids) out_edges[id];
  for (std::size_t i = 0; i < m; ++i) {
    out_edges[tmax.edges[i].parent].push_back(i);
    cur_tail[i] = tmax.edges[i].parent;
  }
  if (out_edges[tmax.root].empty()) throw numeric_error("cut frontier is empty");

  auto mean_out = [&](std::size_t v) {
    double sum = 0.0;
    for (std::size_t i : out_edges[v]) sum += tmax.edges[i].weight;
    return sum / static_cast<double>(out_edges[v].size());
  };
  // Contractibility: the change in cut mean from trading this edge for its
  // head's out-edges. A single-child head degenerates to minus/plus infinity
  // according to whether the trade is strictly profitable.
  auto contractibility = [&](std::size_t ei) {
    const std::size_t head = tmax.edges[ei].child;
    const auto& outs = out_edges[head];
    if (outs.size() == 1)
      return tmax.edges[outs[0]].weight < tmax.edges[ei].weight ? -kInf : kInf;
    double sum = 0.0;
    for (std::size_t i : outs) sum += tmax.edges[i].weight;
    return (sum - tmax.edges[ei].weight) / (static_cast<double>(outs.size()) - 1.0);
  };

  std::vector<char> alive(m, 1);
  double alpha0 = mean_out(tmax.root);
  while (true) {
    double best_lambda = kInf;
    std::size_t best_edge = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (!alive[i] || out_edges[tmax.edges[i].child].empty()) continue;
      const double lambda = contractibility(i);
      if (lambda < best_lambda ||
          (lambda == best_lambda && best_edge < m &&
           tmax.edges[i].child < tmax.edges[best_edge].child)) {
        best_lambda = lambda;
        best_edge = i;
      }
    }
    if (best_edge == m || best_lambda >= alpha0) break;

    // Merge the head into the edge's current tail: the head's out-edges
    // become out-edges of the tail.
    const std::size_t head = tmax.edges[best_edge].child;
    const std::size_t tail = cur_tail[best_edge];
    auto& tail_outs = out_edges[tail];
    tail_outs.erase(std::find(tail_outs.begin(), tail_outs.end(), best_edge));
    for (std::size_t i : out_edges[head]) {
      tail_outs.push_back(i);
      cur_tail[i] = tail;
    }
    out_edges[head].clear();
    alive[best_edge] = 0;
    if (tail == tmax.root) alpha0 = mean_out(tmax.root);
  }

  EdgeCut cut;
  double sum = 0.0;
  std::vector<std::size_t> ids = out_edges[tmax.root];
  std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
    return tmax.edges[a].child < tmax.edges[b].child;
  });
  for (std::size_t i : ids) {
    cut.edges.push_back(tmax.edges[i]);
    sum += tmax.edges[i].weight;
  }
  cut.value = sum / static_cast<double>(cut.edges.size());
  return cut;
}

ClusterFamily clustering_from_cut(const HierarchyTree& t, const EdgeCut& cut) {
  ClusterFamily out;
  out.reserve(cut.edges.size());
  std::vector<std::size_t> children;
  for (const WeightedEdge& e : cut.edges) children.push_back(e.child);
  std::sort(children.begin(), children.end());
  for (std::size_t id : children) out.push_back(t.nodes.at(id).members);
  return out;
}

CutSelection select_clusters(const HierarchyTree& t) {
  PruneResult pruned = prune_unclustered(t);
  const WeightedCutTree weighted = weight_edges(pruned.tree);
  const WeightedCutTree arb = max_arborescence(weighted);
  const EdgeCut cut = min_average_cut(arb);
  return {clustering_from_cut(pruned.tree, cut), std::move(pruned.unclustered), cut};
}

}  // namespace aqcm
