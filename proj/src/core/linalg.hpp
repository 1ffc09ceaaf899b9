#pragma once

#include <cstddef>
#include <vector>

namespace rgg {

// Dense row-major square matrix, just big enough for the C(n,2) x C(n,2)
// covariance blocks this library needs (n <= 11 -> 55x55).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

// Lower-triangular Cholesky factor; throws std::runtime_error if the matrix
// is not positive definite (beyond a small tolerance).
Matrix cholesky(const Matrix& a);

// Inverse by Gauss-Jordan with partial pivoting.
Matrix inverse(const Matrix& a);

// max |(A*B - I)_{ij}|, used to verify precision_inverse.
double inverse_residual(const Matrix& a, const Matrix& b);

// Solves the symmetric 3x3 system M x = rhs (quadratic normal equations).
void solve3(const double m[3][3], const double rhs[3], double out[3]);

// Eigenvalue condition number of a symmetric positive definite 3x3 matrix.
double condition_number_sym3(const double m[3][3]);

// Standard normal CDF.
double normal_cdf(double x);

}  // namespace rgg
