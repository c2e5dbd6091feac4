#include "iqu/matrix.hpp"

#include <cassert>
#include <cmath>

namespace iqu {

Matrix Matrix::identity(size_t n) {
    Matrix m(n);
    for (size_t i = 0; i < n; ++i)
        m.at(i, i) = 1.0;
    return m;
}

Matrix matmul(const Matrix& lhs, const Matrix& rhs) {
    assert(lhs.dim == rhs.dim);
    const size_t n = lhs.dim;
    Matrix out(n);
    for (size_t r = 0; r < n; ++r) {
        for (size_t k = 0; k < n; ++k) {
            const Complex l = lhs.at(r, k);
            if (l == Complex{})
                continue;
            for (size_t c = 0; c < n; ++c)
                out.at(r, c) += l * rhs.at(k, c);
        }
    }
    return out;
}

Matrix kron(const Matrix& lhs, const Matrix& rhs) {
    const size_t n = lhs.dim, m = rhs.dim;
    Matrix out(n * m);
    for (size_t r1 = 0; r1 < n; ++r1)
        for (size_t c1 = 0; c1 < n; ++c1) {
            const Complex l = lhs.at(r1, c1);
            if (l == Complex{})
                continue;
            for (size_t r2 = 0; r2 < m; ++r2)
                for (size_t c2 = 0; c2 < m; ++c2)
                    out.at(r1 * m + r2, c1 * m + c2) = l * rhs.at(r2, c2);
        }
    return out;
}

Matrix dagger(const Matrix& m) {
    Matrix out(m.dim);
    for (size_t r = 0; r < m.dim; ++r)
        for (size_t c = 0; c < m.dim; ++c)
            out.at(r, c) = std::conj(m.at(c, r));
    return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    assert(a.dim == b.dim);
    double worst = 0.0;
    for (size_t i = 0; i < a.a.size(); ++i)
        worst = std::max(worst, std::abs(a.a[i] - b.a[i]));
    return worst;
}

} // namespace iqu
