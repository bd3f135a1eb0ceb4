#pragma once

#include "aqcm/core.hpp"

namespace aqcm {

// Dense row-major square matrix with unchecked access; the workhorse of the
// diffusion kernel where bounds checks would dominate.
struct Matrix {
  std::size_t n = 0;
  std::vector<double> values;

  Matrix() = default;
  explicit Matrix(std::size_t n_) : n(n_), values(n_ * n_, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return values[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

Matrix mat_mul(const Matrix& a, const Matrix& b);

struct AdjacencyGraph {
  std::size_t n = 0;
  Matrix a;  // a(i,j) = weight of the directed edge i->j; 0 means absent
  bool directed = false;

  explicit AdjacencyGraph(std::size_t n_ = 0, bool directed_ = false)
      : n(n_), a(n_), directed(directed_) {}

  void add_edge(std::size_t u, std::size_t v, double w = 1.0) {
    a(u, v) = w;
    if (!directed) a(v, u) = w;
  }
};

// Both directions reachable over positive-weight edges from vertex 0.
bool strongly_connected(const AdjacencyGraph& g);

struct AugmentResult {
  AdjacencyGraph graph;
  bool augmented = false;
};

// Leaves strongly connected graphs alone; otherwise appends a hub vertex
// linked both ways to everything at 10% of the smallest positive weight.
// Throws numeric_error when the graph has no positive edge to scale from.
AugmentResult augment_connectivity(const AdjacencyGraph& g);

// Markov transition matrix: each row divided by its sum.
Matrix row_normalize(const AdjacencyGraph& g);

// Truncated exponential-series kernel sum_{k>=1} (c^k / k!) W^k; terms stop
// once their coefficient falls below tol (entries of W^k never exceed 1, so
// the coefficient bounds the tail).
Matrix heat_kernel(const Matrix& w, double c = 1.63, double tol = 1e-12);

// Full chain: augment -> normalize -> kernel (hub row/column dropped again),
// then similarity as the average of column-vector and row-vector cosines.
SimilarityMatrix diffusion_similarity(const AdjacencyGraph& g, double c = 1.63, double tol = 1e-12);

}  // namespace aqcm
