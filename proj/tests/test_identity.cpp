#include <cmath>
#include <random>

#include "doctest.h"
#include "test_helpers.hpp"
#include "treelap/identity.hpp"
#include "treelap/shortest_path.hpp"

using namespace treelap;

TEST_CASE("identity holds for the weighted path with reciprocal distances") {
    WeightedGraph g(3, {{1, 2, 2.0}, {2, 3, 4.0}});
    DenseMatrix d{{0.0, 0.5, 0.75}, {0.5, 0.0, 0.25}, {0.75, 0.25, 0.0}};
    IdentityReport r = check_identity(g, d);
    CHECK(r.residual_full <= 1e-12);
    CHECK(r.residual_upper <= 1e-12);
    CHECK(r.holds_full);
    CHECK(r.holds_upper);
    CHECK(r.holds_ldl);
}

TEST_CASE("identity holds for the unit edge") {
    WeightedGraph g(2, {{1, 2, 1.0}});
    IdentityReport r = check_identity(g, DenseMatrix{{0.0, 1.0}, {1.0, 0.0}});
    CHECK(r.residual_full == 0.0);
}

TEST_CASE("no zero-diagonal matrix works for a triangle") {
    WeightedGraph triangle(3, {{1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
    IdentityReport r = check_identity(triangle, distance_matrix(triangle));
    CHECK(r.residual_full > 0.1);
    CHECK_FALSE(r.holds_full);
    CHECK_THROWS_AS(check_identity(triangle, DenseMatrix(2, 2, 0.0)), std::invalid_argument);
}

TEST_CASE("forward identity and corollary on the random corpus") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        WeightedGraph g = test::random_tree(rng, 2 + trial % 11);
        DenseMatrix d = distance_matrix(reciprocal(g));
        IdentityReport r = check_identity(g, d);
        CHECK(r.residual_full <= 1e-9);
        CHECK(r.residual_upper <= r.residual_full);
        CHECK(r.residual_ldl <= 1e-8);
    }
}

TEST_CASE("upper residual never exceeds the full residual") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> noise(-0.5, 0.5);
    for (int trial = 0; trial < 30; ++trial) {
        WeightedGraph g = test::random_tree(rng, 3 + trial % 9);
        DenseMatrix d = distance_matrix(reciprocal(g));
        for (int i = 0; i < d.rows(); ++i)
            for (int j = 0; j < d.cols(); ++j) d(i, j) += noise(rng);
        IdentityReport r = check_identity(g, d);
        CHECK(r.residual_upper <= r.residual_full);
    }
}

TEST_CASE("distance recovery from the Laplacian") {
    WeightedGraph star(4, {{1, 2, 1.0}, {1, 3, 1.0}, {1, 4, 1.0}});
    auto d = solve_distance_from_laplacian(star);
    REQUIRE(d.has_value());
    CHECK(max_abs(*d - distance_matrix(star)) <= 1e-9);
    CHECK((*d)(1, 2) == doctest::Approx(2.0));

    WeightedGraph triangle(3, {{1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
    CHECK_FALSE(solve_distance_from_laplacian(triangle).has_value());

    WeightedGraph two_edges(4, {{1, 2, 1.0}, {3, 4, 1.0}});
    CHECK_FALSE(solve_distance_from_laplacian(two_edges).has_value());

    std::mt19937 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        WeightedGraph g = test::random_tree(rng, 2 + trial % 7);
        auto solved = solve_distance_from_laplacian(g);
        REQUIRE(solved.has_value());
        CHECK(max_abs(*solved - distance_matrix(reciprocal(g))) <= 1e-9);
    }
}

TEST_CASE("free-diagonal solutions differ by a rank-one column offset") {
    // Without the zero-diagonal rows the solution set is D + 1 a^T; the
    // solver's particular solution minus the distance matrix must have
    // constant columns, and the constrained system pins a = 0 with full rank.
    WeightedGraph g(4, {{1, 2, 2.0}, {2, 3, 1.0}, {2, 4, 0.5}});
    const int n = 4;
    DenseMatrix l = laplacian(g);
    std::vector<int> deg = degree_sequence(g);

    DenseMatrix a(n * n, n * n);
    DenseMatrix b(n * n, 1);
    int r = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j, ++r) {
            for (int k = 0; k < n; ++k) a(r, k * n + j) = l(i, k);
            b(r, 0) = (2.0 - deg[i]) - (i == j ? 2.0 : 0.0);
        }
    auto free_diag = solve_consistent(a, b, solve_tolerance(l));
    REQUIRE(free_diag.consistent);
    CHECK(free_diag.rank == n * n - n);

    DenseMatrix expected = distance_matrix(reciprocal(g));
    DenseMatrix particular(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) particular(i, j) = (*free_diag.solution)(i * n + j, 0);
    DenseMatrix delta = particular - expected;
    for (int j = 0; j < n; ++j)
        for (int i = 1; i < n; ++i) CHECK(delta(i, j) == doctest::Approx(delta(0, j)).epsilon(1e-9));

    // full constrained system: unique zero-diagonal solution
    auto constrained = solve_distance_from_laplacian(g);
    REQUIRE(constrained.has_value());
    CHECK(max_abs(*constrained - expected) <= 1e-9);
}

TEST_CASE("closed-form distance inverse") {
    WeightedGraph p3(3, {{1, 2, 1.0}, {2, 3, 1.0}});
    DenseMatrix inv = graham_lovasz_inverse(p3);
    // outer((1,0,1))/4 - L/2, worked out by hand
    DenseMatrix expected{{-0.25, 0.5, 0.25}, {0.5, -1.0, 0.5}, {0.25, 0.5, -0.25}};
    CHECK(max_abs(inv - expected) <= 1e-15);
    CHECK(max_abs(matmul(distance_matrix(p3), inv) - DenseMatrix::identity(3)) <= 1e-12);

    WeightedGraph e(2, {{1, 2, 1.0}});
    CHECK(max_abs(matmul(distance_matrix(e), graham_lovasz_inverse(e)) -
                  DenseMatrix::identity(2)) <= 1e-12);

    CHECK_THROWS_AS(graham_lovasz_inverse(WeightedGraph(3, {{1, 2, 1.0}})), NotATreeError);

    std::mt19937 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        WeightedGraph g = test::random_tree(rng, 2 + trial % 9);
        DenseMatrix d = distance_matrix(reciprocal(g));
        CHECK(max_abs(matmul(d, graham_lovasz_inverse(g)) -
                      DenseMatrix::identity(g.vertex_count())) <= 1e-9);
    }
}

TEST_CASE("generalized inverse scale is fixed by its contract") {
    // Of the two candidate scalings of the centered distance product, only
    // -1/2 satisfies P L = I - J/n; the +1/2 one lands at the negation.
    for (const WeightedGraph& g : {WeightedGraph(2, {{1, 2, 1.0}}),
                                   WeightedGraph(3, {{1, 2, 1.0}, {2, 3, 1.0}})}) {
        const int n = g.vertex_count();
        DenseMatrix center = DenseMatrix::identity(n) - (1.0 / n) * DenseMatrix::constant(n, n, 1.0);
        DenseMatrix product = matmul(matmul(center, distance_matrix(reciprocal(g))), center);
        DenseMatrix minus_half = -0.5 * product;
        DenseMatrix plus_half = 0.5 * product;
        CHECK(max_abs(matmul(minus_half, laplacian(g)) - center) <= 1e-12);
        CHECK(max_abs(matmul(plus_half, laplacian(g)) - center) > 0.1);
        CHECK(max_abs(generalized_inverse_laplacian(g) - minus_half) == 0.0);
    }
}

TEST_CASE("generalized inverse contract on trees") {
    WeightedGraph e(2, {{1, 2, 1.0}});
    DenseMatrix pl = matmul(generalized_inverse_laplacian(e), laplacian(e));
    CHECK(max_abs(pl - DenseMatrix{{0.5, -0.5}, {-0.5, 0.5}}) <= 1e-12);

    std::mt19937 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        WeightedGraph g = test::random_tree(rng, 2 + trial % 11);
        const int n = g.vertex_count();
        DenseMatrix center = DenseMatrix::identity(n) - (1.0 / n) * DenseMatrix::constant(n, n, 1.0);
        CHECK(max_abs(matmul(generalized_inverse_laplacian(g), laplacian(g)) - center) <= 1e-9);
    }

    CHECK_THROWS_AS(generalized_inverse_laplacian(WeightedGraph(3, {{1, 2, 1.0}})), NotATreeError);
}

TEST_CASE("sphericity value equals twice the reciprocal total weight") {
    WeightedGraph p3(3, {{1, 2, 1.0}, {2, 3, 1.0}});
    CHECK(spherical_edm_check(p3) == doctest::Approx(1.0).epsilon(1e-12));

    WeightedGraph e(2, {{1, 2, 1.0}});
    CHECK(spherical_edm_check(e) == doctest::Approx(2.0).epsilon(1e-12));

    WeightedGraph heavy(3, {{1, 2, 4.0}, {2, 3, 6.0}});  // total weight 10
    CHECK(spherical_edm_check(heavy) == doctest::Approx(0.2).epsilon(1e-9));

    CHECK_THROWS_AS(spherical_edm_check(WeightedGraph(3, {{1, 2, 1.0}})), NotATreeError);

    std::mt19937 rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        WeightedGraph g = test::random_tree(rng, 2 + trial % 11);
        double total = 0.0;
        for (const Edge& edge : g.edges()) total += edge.weight;
        double value = spherical_edm_check(g);
        CHECK(value > 0.0);
        CHECK(std::abs(value - 2.0 / total) <= 1e-9);
    }
}

TEST_CASE("reciprocal distances dominate reciprocal weights, tight exactly on edges") {
    std::mt19937 rng(47);
    for (int trial = 0; trial < 30; ++trial) {
        WeightedGraph g = test::random_tree(rng, 2 + trial % 9);
        WeightedGraph r = reciprocal(g);
        DenseMatrix d = distance_matrix(r);
        DenseMatrix w = weight_matrix(r);
        const int n = g.vertex_count();
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                CHECK(d(i, j) >= w(i, j) - 1e-12);
                if (r.has_edge(i + 1, j + 1))
                    CHECK(d(i, j) == doctest::Approx(w(i, j)));
                else
                    CHECK(d(i, j) > 0.0);
            }
    }
}
