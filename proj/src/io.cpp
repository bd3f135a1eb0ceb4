#include "aqcm/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace aqcm {

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

double parse_field(const std::string& field, std::size_t line_no, std::size_t col) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(field, &pos);
    while (pos < field.size() && (field[pos] == ' ' || field[pos] == '\t')) ++pos;
    if (pos != field.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw input_error("line " + std::to_string(line_no) + ", field " + std::to_string(col + 1) +
                      ": cannot parse '" + field + "' as a number");
  }
}

std::vector<std::vector<double>> read_numeric_csv(const std::string& path) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  for (const std::string& line : read_lines(path)) {
    ++line_no;
    if (blank(line) || line[line.find_first_not_of(" \t")] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    std::size_t col = 0;
    while (std::getline(ss, field, ',')) row.push_back(parse_field(field, line_no, col++));
    if (!rows.empty() && row.size() != rows.front().size())
      throw input_error("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(rows.front().size()) + " fields, found " +
                        std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw input_error("no data rows in " + path);
  return rows;
}

}  // namespace

std::vector<std::vector<double>> read_points_csv(const std::string& path) {
  return read_numeric_csv(path);
}

SimilarityMatrix read_similarity_csv(const std::string& path) {
  const auto rows = read_numeric_csv(path);
  if (rows.size() != rows.front().size())
    throw input_error("similarity matrix in " + path + " is not square (" +
                      std::to_string(rows.size()) + " rows, " +
                      std::to_string(rows.front().size()) + " columns)");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[i][j] < 0.0)
        throw input_error("similarity value at row " + std::to_string(i + 1) + ", field " +
                          std::to_string(j + 1) + " is negative");
      const double diff = std::abs(rows[i][j] - rows[j][i]);
      if (diff > 1e-9 * std::max(1.0, std::abs(rows[i][j])))
        throw input_error("similarity matrix is asymmetric at row " + std::to_string(i + 1) +
                          ", field " + std::to_string(j + 1));
    }
  }
  // Mirror to kill sub-tolerance asymmetries before the strict constructor.
  auto symmetric = rows;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) symmetric[j][i] = symmetric[i][j];
  return SimilarityMatrix::from_rows(symmetric);
}

EdgeListData read_edge_list(const std::string& path) {
  std::map<std::string, std::size_t> index;
  std::vector<std::string> names;
  struct RawEdge {
    std::size_t u, v;
    double w;
  };
  std::vector<RawEdge> raw;

  std::size_t line_no = 0;
  for (const std::string& line : read_lines(path)) {
    ++line_no;
    if (blank(line) || line[line.find_first_not_of(" \t")] == '#') continue;
    std::stringstream ss(line);
    std::string src, dst, rest;
    ss >> src >> dst;
    if (dst.empty())
      throw input_error("line " + std::to_string(line_no) + ": expected 'src dst [weight]'");
    double w = 1.0;
    if (ss >> rest) {
      w = parse_field(rest, line_no, 2);
      if (w < 0.0)
        throw input_error("line " + std::to_string(line_no) + ": negative edge weight");
      std::string extra;
      if (ss >> extra)
        throw input_error("line " + std::to_string(line_no) + ": trailing fields");
    }
    auto id_of = [&](const std::string& name) {
      auto [it, inserted] = index.emplace(name, names.size());
      if (inserted) names.push_back(name);
      return it->second;
    };
    raw.push_back({id_of(src), id_of(dst), w});
  }
  if (names.empty()) throw input_error("no edges in " + path);

  EdgeListData out{AdjacencyGraph(names.size(), false), std::move(names)};
  for (const RawEdge& e : raw) out.graph.add_edge(e.u, e.v, e.w);
  return out;
}

std::vector<int> read_labels(const std::string& path) {
  std::map<std::string, int> ids;
  std::vector<int> labels;
  for (const std::string& line : read_lines(path)) {
    if (blank(line) || line[line.find_first_not_of(" \t")] == '#') continue;
    std::string token = line;
    const auto begin = token.find_first_not_of(" \t");
    const auto end = token.find_last_not_of(" \t");
    token = token.substr(begin, end - begin + 1);
    auto [it, inserted] = ids.emplace(token, static_cast<int>(ids.size()));
    labels.push_back(it->second);
  }
  if (labels.empty()) throw input_error("no labels in " + path);
  return labels;
}

nlohmann::json tree_to_json(const HierarchyTree& t, nlohmann::json meta) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const TreeNode& node : t.nodes) {
    nodes.push_back({{"id", node.id},
                     {"level", node.level},
                     {"members", node.members},
                     {"density", node.density},
                     {"unclustered", node.unclustered}});
  }
  nlohmann::json edges = nlohmann::json::array();
  std::vector<TreeEdge> sorted = t.edges;
  std::sort(sorted.begin(), sorted.end(), [](const TreeEdge& a, const TreeEdge& b) {
    return a.parent != b.parent ? a.parent < b.parent : a.child < b.child;
  });
  for (const TreeEdge& e : sorted) edges.push_back({e.parent, e.child});

  nlohmann::json j{{"n", t.base_size()}, {"root", t.root}, {"nodes", nodes}, {"edges", edges}};
  if (!meta.is_null() && !meta.empty()) j["meta"] = std::move(meta);
  return j;
}

HierarchyTree tree_from_json(const nlohmann::json& j) {
  HierarchyTree t;
  t.root = j.at("root").get<std::size_t>();
  for (const auto& n : j.at("nodes")) {
    TreeNode node;
    node.id = n.at("id").get<std::size_t>();
    node.level = n.at("level").get<int>();
    node.members = n.at("members").get<Cluster>();
    node.density = n.at("density").get<double>();
    node.unclustered = n.at("unclustered").get<bool>();
    t.nodes.push_back(std::move(node));
  }
  for (const auto& e : j.at("edges")) t.edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()});
  t.rebuild_adjacency();
  return t;
}

std::string tree_to_dot(const HierarchyTree& t) {
  std::ostringstream os;
  os << "digraph hierarchy {\n  rankdir=TB;\n";
  for (const TreeNode& node : t.nodes) {
    os << "  n" << node.id << " [label=\"" << node.id << " L" << node.level
       << " size=" << node.members.size() << " den=" << node.density << "\"";
    if (node.unclustered) os << " style=dashed";
    if (node.id == t.root) os << " shape=doubleoctagon";
    os << "];\n";
  }
  std::vector<TreeEdge> sorted = t.edges;
  std::sort(sorted.begin(), sorted.end(), [](const TreeEdge& a, const TreeEdge& b) {
    return a.parent != b.parent ? a.parent < b.parent : a.child < b.child;
  });
  for (const TreeEdge& e : sorted) os << "  n" << e.parent << " -> n" << e.child << ";\n";
  os << "}\n";
  return os.str();
}

std::vector<std::size_t> leaf_order(const HierarchyTree& t) {
  std::vector<std::size_t> order;
  std::vector<char> visited(t.nodes.size(), 0);
  std::vector<std::size_t> stack{t.root};
  while (!stack.empty()) {
    const std::size_t id = stack.back();
    stack.pop_back();
    if (visited[id]) continue;
    visited[id] = 1;
    const TreeNode& node = t.nodes[id];
    if (node.level == 0) {
      order.push_back(node.members[0]);
      continue;
    }
    const auto& kids = t.children(id);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write file: " + path);
  out << content;
  if (!out) throw input_error("failed writing file: " + path);
}

}  // namespace aqcm
