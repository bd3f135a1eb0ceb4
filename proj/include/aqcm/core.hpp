#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace aqcm {

// Thrown for unreadable or malformed user input (CLI exit code 1).
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown for numeric or degenerate-structure failures (CLI exit code 2).
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A cluster is a sorted, duplicate-free, non-empty set of vertex indices.
using Cluster = std::vector<std::size_t>;
using ClusterFamily = std::vector<Cluster>;

// Dense symmetric matrix of non-negative pairwise similarities over 0-based
// vertex indices. Diagonal entries are stored but carry no meaning; all
// operations read off-diagonal values only.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  explicit SimilarityMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  // Validates squareness, symmetry and non-negativity.
  static SimilarityMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const {
    check(i);
    check(j);
    return values_[i * n_ + j];
  }

  // Sets both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, double v);

  bool operator==(const SimilarityMatrix& other) const = default;

 private:
  void check(std::size_t i) const {
    if (i >= n_) throw std::out_of_range("vertex index " + std::to_string(i) + " out of range");
  }

  std::size_t n_ = 0;
  std::vector<double> values_;
};

// Mean pairwise similarity over the cluster; 1.0 for singletons.
double density(const Cluster& members, const SimilarityMatrix& s);

// Mean similarity of outside vertex v to the cluster's members.
double contribution(std::size_t v, const Cluster& members, const SimilarityMatrix& s);

// Sorted union / intersection size helpers used across modules.
Cluster cluster_union(const Cluster& a, const Cluster& b);
std::size_t overlap_size(const Cluster& a, const Cluster& b);
bool is_subset(const Cluster& sub, const Cluster& super);

}  // namespace aqcm
