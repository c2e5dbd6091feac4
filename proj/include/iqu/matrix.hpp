#pragma once

// Minimal dense complex matrix support: just enough for the gate table and
// for the build_matrix oracle (explicit products and Kronecker products).

#include <complex>
#include <cstddef>
#include <vector>

namespace iqu {

using Complex = std::complex<double>;

struct Matrix {
    size_t dim = 0;
    std::vector<Complex> a; // row-major, dim x dim

    Matrix() = default;
    explicit Matrix(size_t n) : dim(n), a(n * n) {}
    Matrix(size_t n, std::initializer_list<Complex> entries) : dim(n), a(entries) {}

    Complex& at(size_t r, size_t c) { return a[r * dim + c]; }
    const Complex& at(size_t r, size_t c) const { return a[r * dim + c]; }

    static Matrix identity(size_t n);
};

Matrix matmul(const Matrix& lhs, const Matrix& rhs);
Matrix kron(const Matrix& lhs, const Matrix& rhs);
Matrix dagger(const Matrix& m);

// max |a_ij - b_ij| over all entries; dimensions must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

} // namespace iqu
