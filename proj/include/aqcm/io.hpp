#pragma once

#include <string>

#include "json.hpp"

#include "aqcm/core.hpp"
#include "aqcm/diffusion.hpp"
#include "aqcm/tree.hpp"

namespace aqcm {

// Points: one CSV row per point, numeric columns, consistent arity.
std::vector<std::vector<double>> read_points_csv(const std::string& path);

// Dense n x n CSV; rejects asymmetric or negative input.
SimilarityMatrix read_similarity_csv(const std::string& path);

struct EdgeListData {
  AdjacencyGraph graph;                  // undirected interpretation
  std::vector<std::string> vertex_names; // label of each index, first-seen order
};

// Whitespace-separated "src dst [weight]" lines; '#' starts a comment.
EdgeListData read_edge_list(const std::string& path);

// One label per line, aligned with point/vertex index order; arbitrary strings
// are mapped to dense ints in first-seen order.
std::vector<int> read_labels(const std::string& path);

nlohmann::json tree_to_json(const HierarchyTree& t, nlohmann::json meta = {});
HierarchyTree tree_from_json(const nlohmann::json& j);

std::string tree_to_dot(const HierarchyTree& t);

// Depth-first leaf permutation for heat-map display; children visited in id
// order, multi-parent leaves emitted at their first visit.
std::vector<std::size_t> leaf_order(const HierarchyTree& t);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace aqcm
