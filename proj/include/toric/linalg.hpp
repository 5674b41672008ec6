#ifndef TORIC_LINALG_HPP
#define TORIC_LINALG_HPP

#include "toric/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace toric {

/// Dense row-major matrix over the rationals.
using Matrix = std::vector<Vector>;

namespace detail {

/// In-place reduced row echelon form. Returns pivot column per nonzero row.
inline std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        Rational inv = 1 / m[row][col];
        for (std::size_t j = col; j < cols; ++j) m[row][j] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t j = col; j < cols; ++j) m[r][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace detail

inline std::size_t rank(Matrix m) {
    if (m.empty()) return 0;
    return detail::rref(m, m.front().size()).size();
}

inline std::size_t rank_of_vectors(const std::vector<IntVector>& vs) {
    Matrix m;
    m.reserve(vs.size());
    for (const auto& v : vs) m.push_back(to_rational(v));
    return rank(std::move(m));
}

/// Some solution x of A x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
inline std::optional<Vector> solve_any(const Matrix& a, const Vector& b, std::size_t cols) {
    Matrix aug;
    aug.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Vector row = a[i];
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    auto pivots = detail::rref(aug, cols + 1);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    Vector x(cols, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
    return x;
}

/// The unique solution of A x = b, or nullopt when inconsistent or underdetermined.
inline std::optional<Vector> solve_unique(const Matrix& a, const Vector& b, std::size_t cols) {
    if (rank(a) != cols) return std::nullopt;
    return solve_any(a, b, cols);
}

/// Basis of {x : A x = 0}.
inline std::vector<Vector> nullspace(Matrix a, std::size_t cols) {
    auto pivots = detail::rref(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vector x(cols, Rational(0));
        x[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -a[r][free];
        basis.push_back(std::move(x));
    }
    return basis;
}

inline Rational determinant(Matrix m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && m[sel][col] == 0) ++sel;
        if (sel == n) return 0;
        if (sel != col) {
            std::swap(m[sel], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rational f = m[r][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
        }
    }
    return det;
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline Integer determinant(const std::vector<IntVector>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) return 1;
    std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = rows[i][j];
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t sel = k + 1;
            while (sel < n && m[sel][k] == 0) ++sel;
            if (sel == n) return 0;
            std::swap(m[k], m[sel]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

/// Coefficients a with sum a_i * basis[i] == target, when target lies in the span.
inline std::optional<Vector> express_in(const std::vector<IntVector>& basis, const IntVector& target) {
    const std::size_t dim = target.size();
    Matrix a(dim, Vector(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) a[i][j] = basis[j][i];
    return solve_any(a, to_rational(target), basis.size());
}

}  // namespace toric

#endif
