#include "treelap/identity.hpp"

#include <algorithm>
#include <cmath>

#include "treelap/shortest_path.hpp"

namespace treelap {

namespace {

std::vector<double> two_minus_degree(const WeightedGraph& g) {
    std::vector<double> v;
    v.reserve(g.vertex_count());
    for (int deg : degree_sequence(g)) v.push_back(2.0 - deg);
    return v;
}

DenseMatrix characterization_residual(const WeightedGraph& g, const DenseMatrix& d) {
    const int n = g.vertex_count();
    DenseMatrix l = laplacian(g);
    DenseMatrix rhs = outer(two_minus_degree(g), std::vector<double>(n, 1.0));
    return matmul(l, d) + 2.0 * DenseMatrix::identity(n) - rhs;
}

DenseMatrix centering_projector(int n) {
    DenseMatrix p = DenseMatrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) p(i, j) -= 1.0 / n;
    return p;
}

}  // namespace

double identity_tolerance(const DenseMatrix& l, const DenseMatrix& d) {
    return 1e-9 * std::max(1.0, max_abs(l)) * std::max(1.0, max_abs(d));
}

IdentityReport check_identity(const WeightedGraph& g, const DenseMatrix& d, double tol) {
    const int n = g.vertex_count();
    if (d.rows() != n || d.cols() != n)
        throw std::invalid_argument("check_identity: distance matrix has wrong shape");

    DenseMatrix l = laplacian(g);
    if (tol <= 0.0) tol = identity_tolerance(l, d);

    DenseMatrix residual = characterization_residual(g, d);
    DenseMatrix ldl = matmul(matmul(l, d), l) + 2.0 * l;

    IdentityReport report;
    report.tolerance = tol;
    report.residual_full = max_abs(residual);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            report.residual_upper = std::max(report.residual_upper, std::abs(residual(i, j)));
    report.residual_ldl = max_abs(ldl);
    report.holds_full = report.residual_full <= tol;
    report.holds_upper = report.residual_upper <= tol;
    report.holds_ldl = report.residual_ldl <= 10.0 * tol;
    return report;
}

std::optional<DenseMatrix> solve_distance_from_laplacian(const WeightedGraph& g, double tol) {
    const int n = g.vertex_count();
    DenseMatrix l = laplacian(g);
    if (tol <= 0.0) tol = solve_tolerance(l);

    // Unknowns are all n^2 entries of D (row-major). The characterization rows
    // are stacked with the n zero-diagonal equations and the n(n-1)/2 symmetry
    // equations so consistency is decided on the fully constrained system.
    const int unknowns = n * n;
    const int rows = n * n + n + n * (n - 1) / 2;
    DenseMatrix a(rows, unknowns);
    DenseMatrix b(rows, 1);

    std::vector<double> rhs_row = two_minus_degree(g);
    int r = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j, ++r) {
            for (int k = 0; k < n; ++k) a(r, k * n + j) = l(i, k);
            b(r, 0) = rhs_row[i] - (i == j ? 2.0 : 0.0);
        }
    }
    for (int i = 0; i < n; ++i, ++r) a(r, i * n + i) = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++r) {
            a(r, i * n + j) = 1.0;
            a(r, j * n + i) = -1.0;
        }

    ConsistencyReport solved = solve_consistent(a, b, tol);
    if (!solved.consistent) return std::nullopt;

    DenseMatrix d(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(i, j) = (*solved.solution)(i * n + j, 0);
    return d;
}

DenseMatrix graham_lovasz_inverse(const WeightedGraph& g) {
    if (g.vertex_count() < 2 || !is_tree(g))
        throw NotATreeError("graham_lovasz_inverse: input must be a tree with n >= 2");

    double reciprocal_weight_sum = 0.0;
    for (const Edge& e : g.edges()) reciprocal_weight_sum += 1.0 / e.weight;

    std::vector<double> v = two_minus_degree(g);
    return (1.0 / (2.0 * reciprocal_weight_sum)) * outer(v, v) - 0.5 * laplacian(g);
}

DenseMatrix generalized_inverse_laplacian(const WeightedGraph& g) {
    if (g.vertex_count() < 2 || !is_tree(g))
        throw NotATreeError("generalized_inverse_laplacian: input must be a tree with n >= 2");
    const int n = g.vertex_count();
    DenseMatrix center = centering_projector(n);
    DenseMatrix d = distance_matrix(reciprocal(g));
    // The -1/2 scale is what makes P L = I - J/n hold; the unscaled centered
    // product satisfies P L = -2 (I - J/n) instead.
    return -0.5 * matmul(matmul(center, d), center);
}

double spherical_edm_check(const WeightedGraph& g) {
    if (g.vertex_count() < 2 || !is_tree(g))
        throw NotATreeError("spherical_edm_check: input must be a tree with n >= 2");
    DenseMatrix inv = inverse(distance_matrix(g));
    long double sum = 0.0L;
    for (double v : inv.data()) sum += v;
    return static_cast<double>(sum);
}

}  // namespace treelap
