#include "aqcm/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "aqcm/cut.hpp"
#include "aqcm/engine.hpp"
#include "aqcm/evaluation.hpp"
#include "aqcm/io.hpp"
#include "aqcm/postprocess.hpp"
#include "aqcm/synthgen.hpp"

namespace aqcm {

namespace {

constexpr const char* kToolVersion = "aqcm 1.0.0";

bool tree_has_cluster_below_root(const HierarchyTree& t) {
  for (const TreeNode& node : t.nodes)
    if (node.id != t.root && !node.unclustered && node.members.size() >= 2) return true;
  return false;
}

std::vector<Cluster> sorted_sets(std::vector<Cluster> sets) {
  std::sort(sets.begin(), sets.end());
  return sets;
}

ClusterFamily map_to_base(const ClusterFamily& family, const std::vector<Cluster>& vertex_to_base) {
  ClusterFamily out;
  out.reserve(family.size());
  for (const Cluster& c : family) {
    Cluster b;
    for (std::size_t v : c) b = cluster_union(b, vertex_to_base.at(v));
    out.push_back(std::move(b));
  }
  return out;
}

ClusterFamily dedupe(ClusterFamily family) {
  ClusterFamily out;
  for (Cluster& c : family)
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  return out;
}

}  // namespace

ClusterFamily clusters_at_level(const HierarchyTree& t, int level) {
  ClusterFamily out;
  for (const TreeNode& node : t.nodes)
    if (node.level == level && !node.unclustered && node.members.size() >= 2)
      out.push_back(node.members);
  return out;
}

HierarchyTree iterate_refine(const SimilarityMatrix& s, const PipelineConfig& cfg) {
  const std::size_t n = s.size();
  if (n < 2) throw std::invalid_argument("refinement needs at least 2 data points");
  if (cfg.max_refine_iterations < 1)
    throw std::invalid_argument("max_refine_iterations must be at least 1");

  const GrowthConfig growth{cfg.tau, cfg.max_levels};

  HierarchyTree tree;
  std::vector<std::size_t> prev_ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    tree.nodes.push_back({i, 0, Cluster{i}, 1.0, false});
    prev_ids[i] = i;
  }
  Cluster everything(n);
  std::iota(everything.begin(), everything.end(), 0);

  auto add_node = [&](int level, Cluster members, bool unclustered) {
    const std::size_t id = tree.nodes.size();
    const double den = members.size() == 1 ? 1.0 : density(members, s);
    tree.nodes.push_back({id, level, std::move(members), den, unclustered});
    return id;
  };
  auto connect_contained = [&](std::size_t parent_id) {
    for (std::size_t child : prev_ids)
      if (is_subset(tree.nodes[child].members, tree.nodes[parent_id].members))
        tree.edges.push_back({parent_id, child});
  };
  auto append_root = [&](int level) {
    const std::size_t root_id = add_node(level, everything, false);
    connect_contained(root_id);
    tree.root = root_id;
  };

  std::vector<Cluster> cur_base;
  cur_base.reserve(n);
  for (std::size_t i = 0; i < n; ++i) cur_base.push_back(Cluster{i});
  SimilarityMatrix cur = s;

  int level = 0;  // deepest materialized level
  bool rooted = false;
  for (int iter = 1; iter <= cfg.max_refine_iterations && !rooted; ++iter) {
    if (cur.size() < 2) break;

    const HierarchyTree pass_tree = build_hierarchy(cur, growth);
    ClusterFamily refined;
    if (!tree_has_cluster_below_root(pass_tree)) {
      // Everything merged in one step; the whole current vertex set is the
      // terminal cluster.
      Cluster all_cur(cur.size());
      std::iota(all_cur.begin(), all_cur.end(), 0);
      refined.push_back(std::move(all_cur));
    } else {
      const CutSelection sel = select_clusters(pass_tree);
      refined = eliminate_multimembership(expand(sel.clusters, cur, cfg.rho), cur);
      if (refined.empty()) throw numeric_error("refinement pass produced no clusters");
    }

    ClusterFamily base_fam = dedupe(map_to_base(refined, cur_base));

    if (base_fam.size() == 1 && base_fam.front().size() == n) {
      append_root(level + 1);
      rooted = true;
      break;
    }

    struct Entry {
      Cluster members;
      bool pass_through_singleton;
    };
    std::vector<Entry> entries;
    for (Cluster& c : base_fam) entries.push_back({std::move(c), false});
    for (const Cluster& b : cur_base) {
      const bool absorbed = std::any_of(entries.begin(), entries.end(),
                                        [&](const Entry& e) { return is_subset(b, e.members); });
      if (!absorbed) entries.push_back({b, b.size() == 1});
    }
    std::vector<Entry> unique_entries;
    for (Entry& e : entries) {
      const bool dup = std::any_of(unique_entries.begin(), unique_entries.end(),
                                   [&](const Entry& u) { return u.members == e.members; });
      if (!dup) unique_entries.push_back(std::move(e));
    }

    std::vector<Cluster> next_sets;
    next_sets.reserve(unique_entries.size());
    for (const Entry& e : unique_entries) next_sets.push_back(e.members);
    if (sorted_sets(next_sets) == sorted_sets(cur_base)) {
      break;  // no progress; root goes directly above the previous level
    }

    ++level;
    std::vector<std::size_t> new_ids;
    for (Entry& e : unique_entries)
      new_ids.push_back(add_node(level, std::move(e.members), e.pass_through_singleton));
    for (std::size_t id : new_ids) connect_contained(id);
    prev_ids = std::move(new_ids);

    if (refined.size() == 1) {
      // Single (non-covering) terminal cluster: stop refining, root follows.
      break;
    }

    ContractResult contracted = contract(next_sets, s);
    cur = std::move(contracted.matrix);
    cur_base = std::move(contracted.vertex_to_base);
  }

  if (!rooted) append_root(level + 1);
  tree.rebuild_adjacency();
  validate(tree, s);
  return tree;
}

namespace {

struct LoadedInput {
  SimilarityMatrix s;
  std::optional<AdjacencyGraph> graph;
  std::vector<std::string> vertex_names;
};

LoadedInput load_input(const PipelineConfig& cfg) {
  SimilarityMethod method;
  if (cfg.similarity) {
    method = *cfg.similarity;
  } else {
    switch (cfg.format) {
      case InputFormat::points: method = SimilarityMethod::euclidean; break;
      case InputFormat::similarity: method = SimilarityMethod::precomputed; break;
      case InputFormat::edgelist: method = SimilarityMethod::diffusion; break;
      default: throw input_error("unknown input format");
    }
  }

  LoadedInput out;
  switch (cfg.format) {
    case InputFormat::points: {
      if (method != SimilarityMethod::euclidean)
        throw input_error("points input requires the euclidean similarity method");
      const auto pts = read_points_csv(cfg.input_path);
      if (pts.size() < 2) throw input_error("need at least 2 points");
      out.s = euclidean_similarity(pts);
      break;
    }
    case InputFormat::similarity: {
      if (method != SimilarityMethod::precomputed)
        throw input_error("similarity input requires the precomputed similarity method");
      out.s = read_similarity_csv(cfg.input_path);
      if (out.s.size() < 2) throw input_error("similarity matrix must be at least 2x2");
      break;
    }
    case InputFormat::edgelist: {
      if (method != SimilarityMethod::diffusion)
        throw input_error("edge list input requires the diffusion similarity method");
      EdgeListData data = read_edge_list(cfg.input_path);
      if (data.graph.n < 2) throw input_error("edge list must name at least 2 vertices");
      out.s = diffusion_similarity(data.graph, cfg.diffusion_c, cfg.diffusion_tol);
      out.graph = std::move(data.graph);
      out.vertex_names = std::move(data.vertex_names);
      break;
    }
  }
  return out;
}

bool is_partition(const ClusterFamily& family, std::size_t n) {
  std::vector<char> seen(n, 0);
  for (const Cluster& c : family)
    for (std::size_t m : c) {
      if (seen[m]) return false;
      seen[m] = 1;
    }
  return true;
}

std::string clusters_to_csv(const ClusterFamily& family, std::size_t n,
                            const std::vector<std::string>& names) {
  std::vector<std::vector<std::size_t>> memberships(n);
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t m : family[i]) memberships[m].push_back(i);

  std::ostringstream os;
  os << "point,clusters,singleton\n";
  for (std::size_t p = 0; p < n; ++p) {
    if (names.empty())
      os << p;
    else
      os << names[p];
    os << ",";
    for (std::size_t i = 0; i < memberships[p].size(); ++i) {
      if (i) os << ";";
      os << memberships[p][i];
    }
    os << "," << (memberships[p].empty() ? 1 : 0) << "\n";
  }
  return os.str();
}

nlohmann::json config_meta(const PipelineConfig& cfg) {
  return {{"tool", kToolVersion},
          {"tau", cfg.tau},
          {"rho", cfg.rho},
          {"diffusion_c", cfg.diffusion_c},
          {"diffusion_tol", cfg.diffusion_tol},
          {"iterate", cfg.iterate},
          {"max_refine", cfg.max_refine_iterations},
          {"seed", cfg.seed},
          {"prng", kPrngId},
          {"levels_record", "post-processed clusterings"}};
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  if (cfg.tau < 0.0) throw input_error("tau must be non-negative");
  if (cfg.rho < 0.0 || cfg.rho > 1.0) throw input_error("rho must lie in [0,1]");
  if (cfg.diffusion_c <= 0.0) throw input_error("diffusion constant must be positive");
  if (cfg.diffusion_tol <= 0.0) throw input_error("diffusion tolerance must be positive");
  if (cfg.out_dir.empty()) throw input_error("output directory is required");

  std::filesystem::create_directories(cfg.out_dir);

  const LoadedInput in = load_input(cfg);
  const std::size_t n = in.s.size();

  std::vector<int> truth;
  if (!cfg.truth_path.empty()) {
    truth = read_labels(cfg.truth_path);
    if (truth.size() != n)
      throw input_error("truth labels count (" + std::to_string(truth.size()) +
                        ") does not match input size (" + std::to_string(n) + ")");
  }

  PipelineResult result;
  if (cfg.iterate) {
    result.tree = iterate_refine(in.s, cfg);
    result.clusters = clusters_at_level(result.tree, 1);
  } else {
    result.tree = build_hierarchy(in.s, {cfg.tau, cfg.max_levels});
    const CutSelection sel = select_clusters(result.tree);
    result.clusters = eliminate_multimembership(expand(sel.clusters, in.s, cfg.rho), in.s);
  }
  std::vector<char> covered(n, 0);
  for (const Cluster& c : result.clusters)
    for (std::size_t m : c) covered[m] = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (!covered[i]) result.unclustered.push_back(i);

  // Metrics.
  nlohmann::json metrics;
  metrics["n"] = n;
  metrics["cluster_count"] = result.clusters.size();
  metrics["unclustered_count"] = result.unclustered.size();
  if (!result.clusters.empty()) {
    const SizeStats st = cluster_size_stats(result.clusters);
    metrics["size_stats"] = {{"mean", st.mean},
                             {"std", st.stddev},
                             {"median", st.median},
                             {"min", st.min},
                             {"max", st.max}};
  }
  const bool partition = is_partition(result.clusters, n);
  metrics["is_partition"] = partition;
  if (!truth.empty() && !result.clusters.empty()) {
    std::vector<int> pred_r, truth_r;
    std::vector<int> first_cluster(n, -1);
    for (std::size_t i = result.clusters.size(); i-- > 0;)
      for (std::size_t m : result.clusters[i]) first_cluster[m] = static_cast<int>(i);
    for (std::size_t p = 0; p < n; ++p) {
      if (first_cluster[p] < 0) continue;  // agreement over clustered points only
      pred_r.push_back(first_cluster[p]);
      truth_r.push_back(truth[p]);
    }
    if (!pred_r.empty()) metrics["ari"] = adjusted_rand_index(pred_r, truth_r);
  }
  if (in.graph && partition && !result.clusters.empty()) {
    const BlockProbabilityMatrix bp = edge_probabilities(*in.graph, result.clusters);
    const SeparationRatios sr = separation_ratios(bp);
    metrics["edge_probabilities"] = bp.p;
    metrics["delta"] = sr.delta;
    metrics["delta_min"] = sr.delta_min;
    try {
      metrics["modularity"] = modularity(*in.graph, result.clusters);
    } catch (const numeric_error&) {
      // edgeless graph; leave modularity out
    }
  }

  // All artifacts are rendered before any file is written; a MANIFEST records
  // what was flushed if a write fails partway.
  const nlohmann::json tree_json = tree_to_json(result.tree, config_meta(cfg));
  const std::string clusters_csv = clusters_to_csv(result.clusters, n, in.vertex_names);
  const std::string dot = tree_to_dot(result.tree);
  std::ostringstream order_txt;
  for (std::size_t leaf : leaf_order(result.tree)) order_txt << leaf << "\n";

  const std::filesystem::path dir(cfg.out_dir);
  std::vector<std::pair<std::string, std::string>> files{
      {"tree.json", tree_json.dump(2) + "\n"},
      {"clusters.csv", clusters_csv},
      {"tree.dot", dot},
      {"order.txt", order_txt.str()},
      {"metrics.json", metrics.dump(2) + "\n"},
  };
  try {
    for (const auto& [name, content] : files) {
      write_text_file((dir / name).string(), content);
      result.artifacts.push_back(name);
    }
  } catch (...) {
    std::ostringstream manifest;
    for (const std::string& name : result.artifacts) manifest << name << "\n";
    write_text_file((dir / "MANIFEST").string(), manifest.str());
    throw;
  }
  return result;
}

}  // namespace aqcm
