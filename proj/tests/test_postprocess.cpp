#include "doctest.h"

#include "aqcm/cut.hpp"
#include "aqcm/engine.hpp"
#include "aqcm/postprocess.hpp"
#include "support.hpp"

using namespace aqcm;

TEST_SUITE_BEGIN("postprocess");

TEST_CASE("clustering factor scores a clear favorite") {
  // cont(4, c1) = 0.8 with den(c1) = 0.8; cont(4, c2) = 0.2.
  const auto s = testsup::make_similarity(5, {{0, 1, 0.8},
                                              {2, 3, 0.9},
                                              {4, 0, 0.8},
                                              {4, 1, 0.8},
                                              {4, 2, 0.2},
                                              {4, 3, 0.2}});
  const ClusteringFactor cf = clustering_factor(4, {{0, 1}, {2, 3}}, s);
  REQUIRE(cf.best.has_value());
  CHECK(*cf.best == 0);
  CHECK(cf.scores.phi_p == doctest::Approx(1.0));
  CHECK(cf.scores.phi_a == doctest::Approx(1.0));
  CHECK(cf.scores.phi_m == doctest::Approx(1.0));
  CHECK(cf.scores.phi_c == doctest::Approx(1.0));
}

TEST_CASE("exactly tied mutual preference yields no best cluster") {
  const auto s = testsup::make_similarity(5, {{0, 1, 0.7},
                                              {2, 3, 0.7},
                                              {4, 0, 0.5},
                                              {4, 1, 0.5},
                                              {4, 2, 0.5},
                                              {4, 3, 0.5}});
  const ClusteringFactor cf = clustering_factor(4, {{0, 1}, {2, 3}}, s);
  CHECK(!cf.best.has_value());
  CHECK(cf.scores.phi_c > 0.0);
}

TEST_CASE("a single candidate always has full individual preference") {
  const auto s = testsup::make_similarity(3, {{0, 1, 0.6}, {2, 0, 0.2}, {2, 1, 0.3}});
  const ClusteringFactor cf = clustering_factor(2, {{0, 1}}, s);
  REQUIRE(cf.best.has_value());
  CHECK(cf.scores.phi_p == doctest::Approx(1.0));
}

TEST_CASE("all-zero contributions mean no candidate") {
  const auto s = testsup::make_similarity(3, {{0, 1, 0.6}});
  const ClusteringFactor cf = clustering_factor(2, {{0, 1}}, s);
  CHECK(!cf.best.has_value());
  CHECK(cf.scores.phi_c == 0.0);
}

TEST_CASE("expansion is the identity on covering families") {
  const auto s = testsup::make_similarity(4, {{0, 1, 0.9}, {2, 3, 0.9}});
  const ClusterFamily fam{{0, 1}, {2, 3}};
  CHECK(expand(fam, s, 0.5) == fam);
}

TEST_CASE("an outlier with a strong unique best cluster is absorbed") {
  const auto s = testsup::make_similarity(5, {{0, 1, 0.8},
                                              {2, 3, 0.9},
                                              {4, 0, 0.8},
                                              {4, 1, 0.8},
                                              {4, 2, 0.2},
                                              {4, 3, 0.2}});
  const ClusterFamily out = expand({{0, 1}, {2, 3}}, s, 0.5);
  CHECK(testsup::sorted_family(out) == ClusterFamily{{0, 1, 4}, {2, 3}});
}

TEST_CASE("two mutually similar loose points pair up") {
  const auto s = testsup::make_similarity(6, {{0, 1, 0.9},
                                              {0, 2, 0.9},
                                              {1, 2, 0.9},
                                              {4, 5, 0.85},
                                              {4, 0, 0.05},
                                              {4, 1, 0.05},
                                              {4, 2, 0.05},
                                              {5, 0, 0.05},
                                              {5, 1, 0.05},
                                              {5, 2, 0.05},
                                              {3, 0, 0.7},
                                              {3, 1, 0.7},
                                              {3, 2, 0.7},
                                              {3, 4, 0.05},
                                              {3, 5, 0.05}});
  const ClusterFamily out = expand({{0, 1, 2}}, s, 0.5);
  CHECK(testsup::sorted_family(out) == ClusterFamily{{0, 1, 2, 3}, {4, 5}});
}

TEST_CASE("expansion below the threshold leaves the outlier loose") {
  const auto s = testsup::make_similarity(
      4, {{0, 1, 0.9}, {0, 2, 0.9}, {1, 2, 0.9}, {3, 0, 0.05}, {3, 1, 0.05}, {3, 2, 0.05}});
  const ClusterFamily out = expand({{0, 1, 2}}, s, 0.5);
  CHECK(out == ClusterFamily{{0, 1, 2}});
}

TEST_CASE("expansion never drops original members") {
  Rng rng(51);
  for (int rep = 0; rep < 10; ++rep) {
    const auto inst = testsup::random_block_similarity(rng);
    const HierarchyTree t = build_hierarchy(inst.s, {});
    const CutSelection sel = select_clusters(t);
    const ClusterFamily out = expand(sel.clusters, inst.s, 0.0);
    for (const Cluster& before : sel.clusters) {
      bool preserved = false;
      for (const Cluster& after : out)
        if (is_subset(before, after)) preserved = true;
      CHECK(preserved);
    }
  }
}

TEST_CASE("core contributions decide multimembership") {
  // 4 sits in both clusters; its core contribution is higher toward {0,1}.
  const auto s = testsup::make_similarity(6, {{0, 1, 0.9},
                                              {2, 3, 0.9},
                                              {4, 0, 0.9},
                                              {4, 1, 0.9},
                                              {4, 2, 0.4},
                                              {4, 3, 0.4}});
  const ClusterFamily out = eliminate_multimembership({{0, 1, 4}, {2, 3, 4}}, s);
  CHECK(testsup::sorted_family(out) == ClusterFamily{{0, 1, 4}, {2, 3}});
}

TEST_CASE("elimination is the identity on disjoint families") {
  const auto s = testsup::make_similarity(4, {{0, 1, 0.9}, {2, 3, 0.9}});
  const ClusterFamily fam{{0, 1}, {2, 3}};
  CHECK(eliminate_multimembership(fam, s) == fam);
}

TEST_CASE("exactly tied core contributions leave the member shared") {
  const auto s = testsup::make_similarity(5, {{0, 1, 0.9},
                                              {2, 3, 0.9},
                                              {4, 0, 0.5},
                                              {4, 1, 0.5},
                                              {4, 2, 0.5},
                                              {4, 3, 0.5}});
  const ClusterFamily out = eliminate_multimembership({{0, 1, 4}, {2, 3, 4}}, s);
  CHECK(testsup::sorted_family(out) == ClusterFamily{{0, 1, 4}, {2, 3, 4}});
}

TEST_CASE("elimination is idempotent once multimembership is resolved") {
  Rng rng(52);
  for (int rep = 0; rep < 10; ++rep) {
    const auto inst = testsup::random_block_similarity(rng);
    const HierarchyTree t = build_hierarchy(inst.s, {});
    const CutSelection sel = select_clusters(t);
    const ClusterFamily once = eliminate_multimembership(expand(sel.clusters, inst.s, 0.0), inst.s);
    const ClusterFamily twice = eliminate_multimembership(once, inst.s);
    CHECK(once == twice);
  }
}

TEST_CASE("expand then eliminate yields total coverage on unique-best data") {
  Rng rng(53);
  for (int rep = 0; rep < 10; ++rep) {
    const auto inst = testsup::random_block_similarity(rng);
    const HierarchyTree t = build_hierarchy(inst.s, {});
    const CutSelection sel = select_clusters(t);

    bool all_unique = true;
    {
      ClusterFamily staged = sel.clusters;
      std::vector<char> covered(inst.s.size(), 0);
      for (const Cluster& c : staged)
        for (std::size_t m : c) covered[m] = 1;
      for (std::size_t x = 0; x < inst.s.size(); ++x)
        if (!covered[x]) staged.push_back(Cluster{x});
      for (std::size_t x = 0; x < inst.s.size(); ++x) {
        if (covered[x]) continue;
        if (!clustering_factor(x, staged, inst.s).best.has_value()) all_unique = false;
      }
    }

    // Total coverage is the expansion contract; elimination may still drop a
    // cluster that shrinks below two members.
    const ClusterFamily expanded = expand(sel.clusters, inst.s, 0.0);
    if (all_unique) {
      std::vector<char> covered(inst.s.size(), 0);
      for (const Cluster& c : expanded)
        for (std::size_t m : c) covered[m] = 1;
      for (char cv : covered) CHECK(cv);
    }
    const ClusterFamily out = eliminate_multimembership(expanded, inst.s);
    std::vector<std::size_t> count(inst.s.size(), 0);
    for (const Cluster& c : out)
      for (std::size_t m : c) count[m]++;
    for (std::size_t x = 0; x < inst.s.size(); ++x) CHECK(count[x] <= 1);
  }
}

TEST_SUITE_END();
