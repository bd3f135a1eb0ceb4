#include "aqcm/postprocess.hpp"

#include <algorithm>

namespace aqcm {

namespace {

bool contains(const Cluster& c, std::size_t x) {
  return std::binary_search(c.begin(), c.end(), x);
}

}  // namespace

ClusteringFactor clustering_factor(std::size_t x, const ClusterFamily& family,
                                   const SimilarityMatrix& s) {
  if (x >= s.size()) throw std::out_of_range("vertex index out of range");
  if (family.empty()) throw std::invalid_argument("clustering factor over an empty family");

  std::vector<std::size_t> candidates;
  std::vector<double> conts;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (contains(family[i], x)) continue;  // includes the {x} singleton itself
    candidates.push_back(i);
    conts.push_back(contribution(x, family[i], s));
  }
  ClusteringFactor out;
  if (candidates.empty()) return out;

  const double max_cont = *std::max_element(conts.begin(), conts.end());
  if (max_cont <= 0.0) return out;

  double best_phi_m = -1.0;
  std::size_t best_idx = 0;
  std::size_t ties = 0;
  PreferenceScores best_scores;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double den = density(family[candidates[i]], s);
    if (den <= 0.0) continue;
    PreferenceScores sc;
    sc.phi_p = conts[i] / max_cont;
    sc.phi_a = conts[i] / den;
    sc.phi_m = sc.phi_p * sc.phi_a;
    if (sc.phi_m > best_phi_m) {
      best_phi_m = sc.phi_m;
      best_idx = candidates[i];
      best_scores = sc;
      ties = 1;
    } else if (sc.phi_m == best_phi_m) {
      ++ties;
    }
  }
  if (best_phi_m < 0.0) return out;

  best_scores.phi_c = best_phi_m;
  out.scores = best_scores;
  if (ties == 1) out.best = best_idx;
  return out;
}

ClusterFamily expand(ClusterFamily family, const SimilarityMatrix& s, double rho) {
  if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("rho must lie in [0,1]");

  const std::size_t n = s.size();
  std::vector<char> covered(n, 0);
  for (const Cluster& c : family)
    for (std::size_t m : c) covered.at(m) = 1;

  std::vector<std::size_t> loose;
  for (std::size_t x = 0; x < n; ++x)
    if (!covered[x]) loose.push_back(x);
  for (std::size_t x : loose) family.push_back(Cluster{x});

  // Score everything against the augmented family first, then commit, so the
  // outcome does not depend on the processing order of the loose points.
  std::vector<std::pair<std::size_t, std::size_t>> joins;  // (point, family index)
  for (std::size_t x : loose) {
    const ClusteringFactor cf = clustering_factor(x, family, s);
    if (cf.best && cf.scores.phi_c >= rho) joins.emplace_back(x, *cf.best);
  }
  for (const auto& [x, idx] : joins) {
    Cluster& c = family[idx];
    c.insert(std::lower_bound(c.begin(), c.end(), x), x);
  }

  ClusterFamily out;
  for (Cluster& c : family) {
    if (c.size() <= 1) continue;
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  return out;
}

ClusterFamily eliminate_multimembership(ClusterFamily family, const SimilarityMatrix& s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> member_count(n, 0);
  for (const Cluster& c : family)
    for (std::size_t m : c) member_count.at(m)++;

  std::vector<char> multi(n, 0);
  for (std::size_t x = 0; x < n; ++x) multi[x] = member_count[x] >= 2;

  // Decisions are computed against the input family, then applied at once.
  std::vector<std::pair<std::size_t, std::size_t>> keep;  // (point, family index to stay in)
  for (std::size_t x = 0; x < n; ++x) {
    if (!multi[x]) continue;
    double best = -1.0;
    std::size_t best_idx = 0;
    std::size_t ties = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (!contains(family[i], x)) continue;
      Cluster core;
      for (std::size_t m : family[i])
        if (!multi[m]) core.push_back(m);
      if (core.empty()) continue;
      const double phi = contribution(x, core, s);
      if (phi > best) {
        best = phi;
        best_idx = i;
        ties = 1;
      } else if (phi == best) {
        ++ties;
      }
    }
    if (best >= 0.0 && ties == 1) keep.emplace_back(x, best_idx);
  }

  for (const auto& [x, idx] : keep) {
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (i == idx) continue;
      auto it = std::lower_bound(family[i].begin(), family[i].end(), x);
      if (it != family[i].end() && *it == x) family[i].erase(it);
    }
  }

  ClusterFamily out;
  for (Cluster& c : family) {
    if (c.size() <= 1) continue;
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace aqcm
