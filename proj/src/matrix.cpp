#include "treelap/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace treelap {

namespace {

void ensure_finite(const std::vector<double>& data) {
    for (double v : data) {
        if (!std::isfinite(v))
            throw std::invalid_argument("matrix entries must be finite");
    }
}

void ensure_same_shape(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shapes differ");
}

}  // namespace

DenseMatrix::DenseMatrix(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("matrix dimensions must be nonnegative");
    if (!std::isfinite(fill))
        throw std::invalid_argument("matrix entries must be finite");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    data_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != cols_)
            throw std::invalid_argument("ragged initializer for matrix");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    ensure_finite(data_);
}

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n, n, 0.0);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::constant(int rows, int cols, double value) {
    return DenseMatrix(rows, cols, value);
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    ensure_same_shape(a, b);
    DenseMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    ensure_same_shape(a, b);
    DenseMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
    DenseMatrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
    return r;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: inner dimensions disagree");
    DenseMatrix r(a.rows(), b.cols());
    // Extended-precision accumulation keeps residual checks well below their
    // tolerances even for badly scaled weight mixes.
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < b.cols(); ++j) {
            long double acc = 0.0L;
            for (int k = 0; k < a.cols(); ++k) acc += static_cast<long double>(a(i, k)) * b(k, j);
            r(i, j) = static_cast<double>(acc);
        }
    }
    return r;
}

DenseMatrix outer(const std::vector<double>& u, const std::vector<double>& v) {
    DenseMatrix r(static_cast<int>(u.size()), static_cast<int>(v.size()));
    for (size_t i = 0; i < u.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) r(static_cast<int>(i), static_cast<int>(j)) = u[i] * v[j];
    return r;
}

double max_abs(const DenseMatrix& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

double solve_tolerance(const DenseMatrix& a) {
    return 1e-9 * std::max(1.0, max_abs(a));
}

ConsistencyReport solve_consistent(const DenseMatrix& a, const DenseMatrix& b, double tol) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("solve_consistent: row counts differ");
    if (tol <= 0.0)
        throw std::invalid_argument("solve_consistent: tolerance must be positive");

    const int m = a.rows();
    const int k = a.cols();
    const int p = b.cols();
    const int width = k + p;

    std::vector<long double> aug(static_cast<size_t>(m) * width, 0.0L);
    auto at = [&](int r, int c) -> long double& { return aug[static_cast<size_t>(r) * width + c]; };
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < k; ++j) at(i, j) = a(i, j);
        for (int j = 0; j < p; ++j) at(i, k + j) = b(i, j);
    }

    std::vector<int> pivot_cols;
    int row = 0;
    for (int col = 0; col < k && row < m; ++col) {
        int best = -1;
        long double best_abs = tol;
        for (int r = row; r < m; ++r) {
            long double v = std::abs(at(r, col));
            if (v >= best_abs) {
                best_abs = v;
                best = r;
            }
        }
        if (best < 0) continue;  // no usable pivot in this column
        if (best != row)
            for (int c = col; c < width; ++c) std::swap(at(best, c), at(row, c));
        for (int r = row + 1; r < m; ++r) {
            long double factor = at(r, col) / at(row, col);
            if (factor == 0.0L) continue;
            at(r, col) = 0.0L;
            for (int c = col + 1; c < width; ++c) at(r, c) -= factor * at(row, c);
        }
        pivot_cols.push_back(col);
        ++row;
    }

    ConsistencyReport report;
    report.rank = row;

    // Rows past the last pivot have every coefficient below tol; the system is
    // consistent only if their right-hand sides vanish as well.
    bool consistent = true;
    for (int r = row; r < m && consistent; ++r)
        for (int j = 0; j < p; ++j)
            if (std::abs(at(r, k + j)) >= tol) {
                consistent = false;
                break;
            }
    report.consistent = consistent;
    if (!consistent) return report;

    DenseMatrix x(k, p, 0.0);
    for (int i = static_cast<int>(pivot_cols.size()) - 1; i >= 0; --i) {
        int col = pivot_cols[i];
        for (int j = 0; j < p; ++j) {
            long double acc = at(i, k + j);
            for (int c = col + 1; c < k; ++c) acc -= at(i, c) * static_cast<long double>(x(c, j));
            x(col, j) = static_cast<double>(acc / at(i, col));
        }
    }
    report.solution = std::move(x);
    return report;
}

DenseMatrix inverse(const DenseMatrix& a, double tol) {
    if (!a.square())
        throw std::invalid_argument("inverse: matrix must be square");
    if (tol <= 0.0) tol = solve_tolerance(a);
    ConsistencyReport r = solve_consistent(a, DenseMatrix::identity(a.rows()), tol);
    if (r.rank < a.rows())
        throw SingularMatrixError("inverse: matrix is singular at tolerance " + std::to_string(tol));
    return *r.solution;
}

}  // namespace treelap
