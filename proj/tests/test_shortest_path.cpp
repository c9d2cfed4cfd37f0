#include <random>

#include "doctest.h"
#include "test_helpers.hpp"
#include "treelap/shortest_path.hpp"

using namespace treelap;

TEST_CASE("distance matrix on small graphs") {
    WeightedGraph p3(3, {{1, 2, 1.0}, {2, 3, 1.0}});
    CHECK(distance_matrix(p3) == DenseMatrix{{0.0, 1.0, 2.0}, {1.0, 0.0, 1.0}, {2.0, 1.0, 0.0}});

    // This is the reciprocal-weight distance matrix of the (2, 4) path.
    WeightedGraph half(3, {{1, 2, 0.5}, {2, 3, 0.25}});
    DenseMatrix d = distance_matrix(half);
    CHECK(d(0, 2) == 0.75);
    CHECK(d(0, 1) == 0.5);
    CHECK(d(1, 2) == 0.25);

    WeightedGraph e(2, {{1, 2, 3.5}});
    CHECK(distance_matrix(e) == DenseMatrix{{0.0, 3.5}, {3.5, 0.0}});
}

TEST_CASE("disconnected graphs are rejected") {
    CHECK_THROWS_AS(distance_matrix(WeightedGraph(4, {{1, 2, 1.0}, {3, 4, 1.0}})),
                    DisconnectedGraphError);
    CHECK_THROWS_AS(distance_matrix(WeightedGraph(2)), DisconnectedGraphError);
}

TEST_CASE("distance matrix invariants on random trees") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        WeightedGraph t = test::random_tree(rng, 2 + trial % 11);
        DenseMatrix d = distance_matrix(t);
        const int n = t.vertex_count();
        for (int i = 0; i < n; ++i) {
            CHECK(d(i, i) == 0.0);
            for (int j = 0; j < n; ++j) {
                CHECK(d(i, j) == d(j, i));
                if (i != j) CHECK(d(i, j) > 0.0);
                for (int k = 0; k < n; ++k) CHECK(d(i, k) <= d(i, j) + d(j, k) + 1e-12);
            }
        }
        // restricted to edges, distances equal weights
        for (const Edge& e : t.edges()) CHECK(d(e.u - 1, e.v - 1) == doctest::Approx(e.weight));
    }
}

TEST_CASE("tree traversal agrees with the general algorithm") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 60; ++trial) {
        WeightedGraph t = test::random_tree(rng, 2 + trial % 11);
        CHECK(max_abs(distance_matrix(t) - tree_distance_matrix(t)) <= 1e-12);
    }
    CHECK_THROWS_AS(tree_distance_matrix(WeightedGraph(3, {{1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}})),
                    NotATreeError);
}

TEST_CASE("wiener index") {
    WeightedGraph star(4, {{1, 2, 1.0}, {1, 3, 1.0}, {1, 4, 1.0}});
    CHECK(wiener_index(distance_matrix(star)) == 9.0);

    WeightedGraph path(4, {{1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}});
    CHECK(wiener_index(distance_matrix(path)) == 10.0);

    WeightedGraph e(2, {{1, 2, 2.5}});
    CHECK(wiener_index(distance_matrix(e)) == 2.5);
}

TEST_CASE("weighted distance sum") {
    WeightedGraph p3(3, {{1, 2, 1.0}, {2, 3, 1.0}});
    DenseMatrix d = distance_matrix(p3);

    DenseMatrix ones_offdiag(3, 3, 1.0);
    for (int i = 0; i < 3; ++i) ones_offdiag(i, i) = 0.0;
    CHECK(weighted_distance_sum(d, ones_offdiag) == wiener_index(d));

    CHECK(weighted_distance_sum(d, DenseMatrix(3, 3, 0.0)) == 0.0);

    DenseMatrix m(3, 3, 0.0);
    m(0, 2) = 2.0;
    m(2, 0) = 2.0;
    CHECK(weighted_distance_sum(d, m) == 4.0);

    CHECK_THROWS_AS(weighted_distance_sum(d, DenseMatrix(2, 2, 0.0)), std::invalid_argument);
}
