#pragma once

#include <optional>

#include "treelap/graph.hpp"
#include "treelap/matrix.hpp"

namespace treelap {

// Residuals of the tree characterization for a given graph and candidate
// distance matrix:
//   full:  L D + 2 I - (2*1 - deg) 1^T
//   upper: strict upper triangle of the same residual
//   ldl:   L D L + 2 L
struct IdentityReport {
    double residual_full = 0.0;
    double residual_upper = 0.0;
    double residual_ldl = 0.0;
    double tolerance = 0.0;
    bool holds_full = false;
    bool holds_upper = false;
    bool holds_ldl = false;
};

// Default residual tolerance, scaled by the magnitudes of both factors.
double identity_tolerance(const DenseMatrix& l, const DenseMatrix& d);

// Evaluate all three residuals for graph g and candidate matrix d. Passing
// tol <= 0 selects identity_tolerance (with 10x slack for the ldl residual,
// which carries one extra product).
IdentityReport check_identity(const WeightedGraph& g, const DenseMatrix& d, double tol = 0.0);

// Treat the characterization as a linear system in the unknown matrix D, with
// the zero-diagonal and symmetry equations adjoined, and return the unique
// solution when the system is consistent. A matrix comes back exactly when g
// is a tree, and then it equals distance_matrix(reciprocal(g)).
std::optional<DenseMatrix> solve_distance_from_laplacian(const WeightedGraph& g, double tol = 0.0);

// Closed-form inverse of distance_matrix(reciprocal(g)) for a tree g, built
// from the Laplacian, the degree sequence and the reciprocal weight sum.
DenseMatrix graham_lovasz_inverse(const WeightedGraph& g);

// Matrix P with P * laplacian(g) = I - J/n for a tree g:
// P = -1/2 (I - J/n) distance_matrix(reciprocal(g)) (I - J/n).
DenseMatrix generalized_inverse_laplacian(const WeightedGraph& g);

// Gower sphericity value 1^T D(g)^{-1} 1 for a tree g; equals twice the
// reciprocal of the total edge weight of g and is strictly positive.
double spherical_edm_check(const WeightedGraph& g);

}  // namespace treelap
