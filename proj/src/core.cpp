#include "aqcm/core.hpp"

#include <algorithm>
#include <cmath>

namespace aqcm {

SimilarityMatrix SimilarityMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  SimilarityMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw std::invalid_argument("similarity matrix row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].size()) + " columns, expected " +
                                  std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = rows[i][j];
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("similarity value at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") is negative or non-finite");
      if (rows[j][i] != v)
        throw std::invalid_argument("similarity matrix is asymmetric at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
      s.values_[i * n + j] = v;
    }
  }
  return s;
}

void SimilarityMatrix::set(std::size_t i, std::size_t j, double v) {
  check(i);
  check(j);
  if (!(v >= 0.0) || !std::isfinite(v))
    throw std::invalid_argument("similarity value must be non-negative and finite");
  values_[i * n_ + j] = v;
  values_[j * n_ + i] = v;
}

namespace {

void check_members(const Cluster& members, const SimilarityMatrix& s) {
  if (members.empty()) throw std::invalid_argument("cluster must be non-empty");
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] >= s.size())
      throw std::out_of_range("cluster member " + std::to_string(members[i]) + " out of range");
    if (i > 0 && members[i] <= members[i - 1])
      throw std::invalid_argument("cluster members must be sorted and duplicate-free");
  }
}

}  // namespace

double density(const Cluster& members, const SimilarityMatrix& s) {
  check_members(members, s);
  const std::size_t k = members.size();
  if (k == 1) return 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) sum += s(members[i], members[j]);
  return sum / (0.5 * static_cast<double>(k) * static_cast<double>(k - 1));
}

double contribution(std::size_t v, const Cluster& members, const SimilarityMatrix& s) {
  check_members(members, s);
  if (v >= s.size()) throw std::out_of_range("vertex index out of range");
  if (std::binary_search(members.begin(), members.end(), v))
    throw std::invalid_argument("contribution vertex must lie outside the cluster");
  double sum = 0.0;
  for (std::size_t u : members) sum += s(u, v);
  return sum / static_cast<double>(members.size());
}

Cluster cluster_union(const Cluster& a, const Cluster& b) {
  Cluster out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t overlap_size(const Cluster& a, const Cluster& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

bool is_subset(const Cluster& sub, const Cluster& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace aqcm
