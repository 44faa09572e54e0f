/*
 * Copyright 2026 the lexiphylo authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "lexiphylo/io_util.hpp"
#include "lexiphylo/linkage.hpp"
#include "support/naive_linkage.hpp"

using namespace lexiphylo;
using testsupport::naive_ward_reference;

namespace {

DistanceMatrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
    DistanceMatrix m;
    for (std::size_t i = 0; i < n; ++i) m.labels.push_back("L" + std::to_string(i));
    m.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = uniform01(rng);
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    }
    return m;
}

}  // namespace

TEST_CASE("two labels merge at the euclidean distance between rows") {
    DistanceMatrix m;
    m.labels = {"A", "B"};
    m.values = {0.0, 0.4, 0.4, 0.0};
    const auto steps = ward_linkage(m);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].a == 0);
    CHECK(steps[0].b == 1);
    // rows (0, .4) and (.4, 0): gap .4 in both coordinates
    CHECK(steps[0].height == doctest::Approx(0.4 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(steps[0].size == 2);
}

TEST_CASE("the nearest pair merges first") {
    DistanceMatrix m;
    m.labels = {"A", "B", "C"};
    // A and B nearly identical rows, C far away
    m.values = {0.0, 0.01, 0.9, 0.01, 0.0, 0.92, 0.9, 0.92, 0.0};
    const auto steps = ward_linkage(m);
    REQUIRE(steps.size() == 2);
    CHECK(steps[0].a == 0);
    CHECK(steps[0].b == 1);
    CHECK(steps[1].b == 3);  // the (A,B) cluster joins C last
}

TEST_CASE("ward heights are non-decreasing") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const auto m = random_symmetric(rng, 4 + rng() % 12);
        const auto steps = ward_linkage(m);
        for (std::size_t i = 1; i < steps.size(); ++i) {
            CHECK(steps[i].height >= steps[i - 1].height - 1e-12);
        }
    }
}

TEST_CASE("chain agglomeration matches the naive reference on random matrices") {
    std::mt19937_64 rng(20260808);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = random_symmetric(rng, 8);
        const auto got = ward_linkage(m);
        const auto expected = naive_ward_reference(m);
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].a == expected[i].a);
            CHECK(got[i].b == expected[i].b);
            CHECK(got[i].size == expected[i].size);
            CHECK(got[i].height == doctest::Approx(expected[i].height).epsilon(1e-9));
        }
    }
}

TEST_CASE("linkage validation rejects bad matrices") {
    DistanceMatrix nan_matrix;
    nan_matrix.labels = {"A", "B"};
    nan_matrix.values = {0.0, std::nan(""), std::nan(""), 0.0};
    CHECK_THROWS_AS(ward_linkage(nan_matrix), std::invalid_argument);

    DistanceMatrix negative;
    negative.labels = {"A", "B"};
    negative.values = {0.0, -0.1, -0.1, 0.0};
    CHECK_THROWS_AS(ward_linkage(negative), std::invalid_argument);

    DistanceMatrix asym;
    asym.labels = {"A", "B"};
    asym.values = {0.0, 0.2, 0.3, 0.0};
    CHECK_THROWS_AS(ward_linkage(asym), std::invalid_argument);

    DistanceMatrix tiny;
    tiny.labels = {"A"};
    tiny.values = {0.0};
    CHECK_THROWS_AS(ward_linkage(tiny), std::invalid_argument);
}

TEST_CASE("precomputed mode consumes entries as dissimilarities") {
    DistanceMatrix m;
    m.labels = {"A", "B"};
    m.values = {0.0, 0.4, 0.4, 0.0};
    const auto steps = ward_linkage_precomputed(m);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].height == doctest::Approx(0.4));
}

TEST_CASE("tree_from_linkage wires parents, heights and labels") {
    DistanceMatrix m;
    m.labels = {"A", "B", "C"};
    m.values = {0.0, 0.05, 0.9, 0.05, 0.0, 0.93, 0.9, 0.93, 0.0};
    const auto tree = ward_cluster(m);
    CHECK(tree.leaf_count() == 3);
    CHECK(tree.nodes.size() == 5);
    CHECK(tree.root == 4);
    CHECK(tree.leaf_labels() == std::vector<std::string>{"A", "B", "C"});
    CHECK(tree.nodes[tree.root].height >= tree.nodes[3].height);
}

namespace {

PhyloTree three_family_tree() {
    // three tight families of three leaves each joined high up
    PhyloTree t;
    std::vector<int> family_roots;
    int leaf = 0;
    for (int f = 0; f < 3; ++f) {
        const int a = t.add_leaf("L" + std::to_string(leaf++));
        const int b = t.add_leaf("L" + std::to_string(leaf++));
        const int c = t.add_leaf("L" + std::to_string(leaf++));
        const int ab = t.add_internal({a, b}, 1.0 + 0.1 * f);
        family_roots.push_back(t.add_internal({ab, c}, 1.3 + 0.1 * f));
    }
    const int f01 = t.add_internal({family_roots[0], family_roots[1]}, 8.0);
    t.root = t.add_internal({f01, family_roots[2]}, 9.0);
    return t;
}

}  // namespace

TEST_CASE("inconsistency is zero for uniform merge heights") {
    PhyloTree t;
    const int a = t.add_leaf("a");
    const int b = t.add_leaf("b");
    const int ab = t.add_internal({a, b}, 1.0);
    const int c = t.add_leaf("c");
    t.root = t.add_internal({ab, c}, 1.0);
    const auto coeff = inconsistency(t, 2);
    CHECK(coeff.at(t.root) == doctest::Approx(0.0));
    CHECK(coeff.at(ab) == doctest::Approx(0.0));  // no sub-merges, zero std
}

TEST_CASE("flat cluster extremes: all singletons or one cluster") {
    const auto t = three_family_tree();
    const auto singletons = flat_clusters(t, -1.0);
    std::set<int> distinct;
    for (const auto& [_, c] : singletons) distinct.insert(c);
    CHECK(distinct.size() == t.leaf_count());

    const auto one = flat_clusters(t, 100.0);
    distinct.clear();
    for (const auto& [_, c] : one) distinct.insert(c);
    CHECK(distinct.size() == 1);
}

TEST_CASE("flat clusters recover the planted families at the default threshold") {
    const auto t = three_family_tree();
    const auto clusters = flat_clusters(t, 1.15);
    std::set<int> distinct;
    for (const auto& [_, c] : clusters) distinct.insert(c);
    CHECK(distinct.size() == 3);
    // family membership preserved
    CHECK(clusters.at("L0") == clusters.at("L1"));
    CHECK(clusters.at("L1") == clusters.at("L2"));
    CHECK(clusters.at("L3") == clusters.at("L4"));
    CHECK(clusters.at("L0") != clusters.at("L3"));
    CHECK(clusters.at("L6") != clusters.at("L0"));
}

TEST_CASE("raising the threshold never increases the cluster count") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = random_symmetric(rng, 10);
        const auto tree = ward_cluster(m);
        std::size_t previous = std::numeric_limits<std::size_t>::max();
        for (const double t : {-1.0, 0.2, 0.6, 0.9, 1.1, 1.3, 2.0, 10.0}) {
            const auto clusters = flat_clusters(tree, t);
            std::set<int> distinct;
            for (const auto& [_, c] : clusters) distinct.insert(c);
            CHECK(distinct.size() <= previous);
            previous = distinct.size();
        }
    }
}
