#include <cmath>

#include "doctest.h"

#include "aqcm/diffusion.hpp"
#include "aqcm/synthgen.hpp"
#include "support.hpp"

using namespace aqcm;

namespace {

AdjacencyGraph two_cycle() {
  AdjacencyGraph g(2, false);
  g.add_edge(0, 1, 1.0);
  return g;
}

AdjacencyGraph random_connected(Rng& rng, std::size_t n) {
  AdjacencyGraph g(n, false);
  for (std::size_t v = 1; v < n; ++v) g.add_edge(rng.below(v), v, 0.2 + rng.uniform());
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.uniform() < 0.15) g.add_edge(u, v, 0.2 + rng.uniform());
  return g;
}

}  // namespace

TEST_SUITE_BEGIN("diffusion");

TEST_CASE("a connected triangle needs no augmentation") {
  AdjacencyGraph g(3, false);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 2);
  const AugmentResult r = augment_connectivity(g);
  CHECK(!r.augmented);
  CHECK(r.graph.n == 3);
}

TEST_CASE("a directed path gains a hub at a tenth of the minimum weight") {
  AdjacencyGraph g(2, true);
  g.add_edge(0, 1, 1.0);
  const AugmentResult r = augment_connectivity(g);
  CHECK(r.augmented);
  REQUIRE(r.graph.n == 3);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(r.graph.a(i, 2) == doctest::Approx(0.1));
    CHECK(r.graph.a(2, i) == doctest::Approx(0.1));
  }
}

TEST_CASE("an edgeless graph cannot be augmented") {
  AdjacencyGraph g(3, false);
  CHECK_THROWS_AS(static_cast<void>(augment_connectivity(g)), numeric_error);
}

TEST_CASE("row normalization produces a stochastic matrix") {
  AdjacencyGraph g(2, false);
  g.add_edge(0, 1, 1.0);
  Matrix w = row_normalize(g);
  CHECK(w(0, 1) == 1.0);
  CHECK(w(1, 0) == 1.0);

  g.a(0, 1) = 2.0;
  g.a(1, 0) = 3.0;
  w = row_normalize(g);
  CHECK(w(0, 1) == 1.0);
  CHECK(w(1, 0) == 1.0);

  AdjacencyGraph star(4, false);
  star.add_edge(0, 1);
  star.add_edge(0, 2);
  star.add_edge(0, 3);
  w = row_normalize(star);
  CHECK(w(0, 0) == 0.0);
  for (std::size_t j = 1; j < 4; ++j) CHECK(w(0, j) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("a zero row is rejected") {
  AdjacencyGraph g(2, true);
  g.add_edge(0, 1, 1.0);
  CHECK_THROWS_AS(row_normalize(g), std::invalid_argument);
}

TEST_CASE("two-cycle kernel matches the hyperbolic closed form") {
  // Even powers of the swap matrix are I, odd powers are the swap itself, so
  // the series splits into cosh(c) - 1 on the diagonal and sinh(c) off it.
  const double c = 1.63;
  const Matrix w = row_normalize(two_cycle());
  const Matrix k = heat_kernel(w, c, 1e-12);
  CHECK(k(0, 0) == doctest::Approx(std::cosh(c) - 1.0).epsilon(1e-3));
  CHECK(k(1, 1) == doctest::Approx(std::cosh(c) - 1.0).epsilon(1e-3));
  CHECK(k(0, 1) == doctest::Approx(std::sinh(c)).epsilon(1e-3));
  CHECK(k(1, 0) == doctest::Approx(std::sinh(c)).epsilon(1e-3));
  CHECK(k(0, 0) == doctest::Approx(1.6500).epsilon(1e-3));
  CHECK(k(0, 1) == doctest::Approx(2.4541).epsilon(1e-3));
}

TEST_CASE("identity transition matrix sums to (e^c - 1) I") {
  Matrix w(3);
  for (std::size_t i = 0; i < 3; ++i) w(i, i) = 1.0;
  const Matrix k = heat_kernel(w, 1.63, 1e-12);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(k(i, j) == doctest::Approx(i == j ? std::exp(1.63) - 1.0 : 0.0).epsilon(1e-9));
}

TEST_CASE("kernel rows all sum to e^c - 1") {
  Rng rng(41);
  const AdjacencyGraph g = random_connected(rng, 12);
  const Matrix k = heat_kernel(row_normalize(g), 1.63, 1e-12);
  for (std::size_t i = 0; i < k.n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < k.n; ++j) sum += k(i, j);
    CHECK(sum == doctest::Approx(std::exp(1.63) - 1.0).epsilon(1e-9));
  }
}

TEST_CASE("two-cycle similarity matches the cosine of the closed-form columns") {
  const double c = 1.63;
  const double a = std::cosh(c) - 1.0;
  const double b = std::sinh(c);
  const double expected = (2.0 * a * b) / (a * a + b * b);
  const SimilarityMatrix s = diffusion_similarity(two_cycle(), c, 1e-12);
  CHECK(s(0, 1) == doctest::Approx(expected).epsilon(1e-6));
  CHECK(s(0, 1) == doctest::Approx(0.926).epsilon(1e-2));
  CHECK(s(0, 0) == 1.0);
  CHECK(s(1, 1) == 1.0);
}

TEST_CASE("similarity is symmetric, unit-diagonal and within [0,1]") {
  Rng rng(42);
  for (int rep = 0; rep < 20; ++rep) {
    const AdjacencyGraph g = random_connected(rng, 5 + rng.below(20));
    const SimilarityMatrix s = diffusion_similarity(g);
    CHECK(s.size() == g.n);
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s(i, i) == 1.0);
      for (std::size_t j = 0; j < s.size(); ++j) {
        CHECK(s(i, j) == s(j, i));
        CHECK(s(i, j) >= 0.0);
        CHECK(s(i, j) <= 1.0);
      }
    }
  }
}

TEST_CASE("augmentation vertex never leaks into the output") {
  AdjacencyGraph g(3, true);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  const SimilarityMatrix s = diffusion_similarity(g);
  CHECK(s.size() == 3);
}

TEST_CASE("extending the series further does not move any entry") {
  Rng rng(43);
  const AdjacencyGraph g = random_connected(rng, 15);
  const Matrix w = row_normalize(g);
  const Matrix k = heat_kernel(w, 1.63, 1e-12);
  const Matrix k_more = heat_kernel(w, 1.63, 1e-40);  // dozens of extra terms
  for (std::size_t i = 0; i < k.n; ++i)
    for (std::size_t j = 0; j < k.n; ++j) CHECK(std::abs(k(i, j) - k_more(i, j)) <= 1e-10);
}

TEST_CASE("vertices with identical neighborhoods are maximally similar") {
  // Complete bipartite 2x3: the two left vertices are twins.
  AdjacencyGraph g(5, false);
  for (std::size_t u : {0, 1})
    for (std::size_t v : {2, 3, 4}) g.add_edge(u, v, 1.0);
  const SimilarityMatrix s = diffusion_similarity(g);
  CHECK(s(0, 1) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_SUITE_END();
