#include "aqcm/diffusion.hpp"

#include <algorithm>
#include <cmath>

namespace aqcm {

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.n;
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* brow = &b.values[k * n];
      double* crow = &c.values[i * n];
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

namespace {

std::vector<char> reach(const Matrix& a, bool reverse) {
  const std::size_t n = a.n;
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v = 0; v < n; ++v) {
      const double w = reverse ? a(v, u) : a(u, v);
      if (w > 0.0 && !seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

bool strongly_connected(const AdjacencyGraph& g) {
  if (g.n <= 1) return true;
  for (bool reverse : {false, true}) {
    const std::vector<char> seen = reach(g.a, reverse);
    for (char s : seen)
      if (!s) return false;
  }
  return true;
}

AugmentResult augment_connectivity(const AdjacencyGraph& g) {
  if (g.n == 0) throw std::invalid_argument("empty graph");
  if (strongly_connected(g)) return {g, false};

  double min_pos = 0.0;
  bool found = false;
  for (double v : g.a.values) {
    if (v > 0.0 && (!found || v < min_pos)) {
      min_pos = v;
      found = true;
    }
  }
  if (!found) throw numeric_error("graph has no positive edge; augmentation weight undefined");

  const double w = 0.10 * min_pos;
  AdjacencyGraph out(g.n + 1, g.directed);
  for (std::size_t i = 0; i < g.n; ++i)
    for (std::size_t j = 0; j < g.n; ++j) out.a(i, j) = g.a(i, j);
  for (std::size_t i = 0; i < g.n; ++i) {
    out.a(i, g.n) = w;
    out.a(g.n, i) = w;
  }
  return {std::move(out), true};
}

Matrix row_normalize(const AdjacencyGraph& g) {
  Matrix w(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) sum += g.a(i, j);
    if (sum <= 0.0)
      throw std::invalid_argument("row " + std::to_string(i) + " has zero out-weight");
    for (std::size_t j = 0; j < g.n; ++j) w(i, j) = g.a(i, j) / sum;
  }
  return w;
}

Matrix heat_kernel(const Matrix& w, double c, double tol) {
  if (c <= 0.0) throw std::invalid_argument("diffusion constant must be positive");
  if (tol <= 0.0) throw std::invalid_argument("truncation tolerance must be positive");

  const std::size_t n = w.n;
  Matrix k_mat(n);
  Matrix term = w;
  double coeff = c;
  for (std::size_t i = 0; i < n * n; ++i) k_mat.values[i] = coeff * term.values[i];
  for (int k = 2; k <= 512; ++k) {
    coeff *= c / static_cast<double>(k);
    if (coeff < tol) break;
    term = mat_mul(term, w);
    for (std::size_t i = 0; i < n * n; ++i) k_mat.values[i] += coeff * term.values[i];
  }
  return k_mat;
}

namespace {

Matrix transpose(const Matrix& a) {
  Matrix t(a.n);
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j) t(j, i) = a(i, j);
  return t;
}

// Gram matrix of the rows of a.
Matrix row_gram(const Matrix& a) {
  const std::size_t n = a.n;
  Matrix g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double* ri = &a.values[i * n];
      const double* rj = &a.values[j * n];
      double dot = 0.0;
      for (std::size_t k = 0; k < n; ++k) dot += ri[k] * rj[k];
      g(i, j) = dot;
      g(j, i) = dot;
    }
  }
  return g;
}

void add_cosines(const Matrix& gram, Matrix& acc) {
  const std::size_t n = gram.n;
  for (std::size_t i = 0; i < n; ++i)
    if (gram(i, i) <= 0.0) throw numeric_error("zero diffusion vector; cosine undefined");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      acc(i, j) += gram(i, j) / std::sqrt(gram(i, i) * gram(j, j));
}

}  // namespace

SimilarityMatrix diffusion_similarity(const AdjacencyGraph& g, double c, double tol) {
  if (g.n < 2) throw std::invalid_argument("diffusion similarity needs at least 2 vertices");

  const AugmentResult aug = augment_connectivity(g);
  const Matrix w = row_normalize(aug.graph);
  Matrix k_mat = heat_kernel(w, c, tol);

  if (aug.augmented) {
    Matrix trimmed(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
      for (std::size_t j = 0; j < g.n; ++j) trimmed(i, j) = k_mat(i, j);
    k_mat = std::move(trimmed);
  }

  Matrix cos_sum(g.n);
  add_cosines(row_gram(transpose(k_mat)), cos_sum);  // column vectors
  add_cosines(row_gram(k_mat), cos_sum);             // row vectors

  SimilarityMatrix s(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = i + 1; j < g.n; ++j) {
      const double v = 0.5 * cos_sum(i, j);
      s.set(i, j, std::clamp(v, 0.0, 1.0));
    }
    s.set(i, i, 1.0);
  }
  return s;
}

}  // namespace aqcm
