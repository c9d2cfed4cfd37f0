#pragma once

#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace treelap {

struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense row-major real matrix. Construction rejects NaN/Inf entries.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols, double fill = 0.0);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<double>& data() const { return data_; }

    bool operator==(const DenseMatrix&) const = default;

    static DenseMatrix identity(int n);
    static DenseMatrix constant(int rows, int cols, double value);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

// Standard matrix product; inner dimensions must agree.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

// Rank-1 product u * v^T.
DenseMatrix outer(const std::vector<double>& u, const std::vector<double>& v);

// Largest entry magnitude (0 for an empty matrix).
double max_abs(const DenseMatrix& a);

struct ConsistencyReport {
    bool consistent = false;
    std::optional<DenseMatrix> solution;  // one solution (free variables set to 0) when consistent
    int rank = 0;
};

// Decide whether A x = b has a solution for every column b of B, by Gaussian
// elimination with partial pivoting on the augmented system. Rows left without a
// pivot (all candidates below tol) must have right-hand sides below tol in every
// column for the system to be consistent. A may be rectangular.
ConsistencyReport solve_consistent(const DenseMatrix& a, const DenseMatrix& b, double tol);

// Default pivot/consistency tolerance, scaled by the matrix magnitude.
double solve_tolerance(const DenseMatrix& a);

// Inverse of a square nonsingular matrix. Throws SingularMatrixError when a pivot
// falls below tol.
DenseMatrix inverse(const DenseMatrix& a, double tol = -1.0);

}  // namespace treelap
