#pragma once

// Dense exact linear algebra over a Scalar field: elimination, rank,
// nullspace, square solves, determinants.  Sizes here are tiny (dimension
// at most a few dozen), so plain Gaussian elimination is the right tool.

#include <contexture/scalar.hpp>

#include <optional>
#include <vector>

namespace ctx {

template <Scalar S>
using Vec = std::vector<S>;
template <Scalar S>
using Mat = std::vector<std::vector<S>>;

template <Scalar S>
S dot(const Vec<S>& a, const Vec<S>& b) {
    S acc{};
    for (size_t i = 0; i < a.size(); ++i)
        if (!is_zero(a[i]) && !is_zero(b[i])) acc += a[i] * b[i];
    return acc;
}

// In-place reduced row echelon form; returns the pivot column of each
// pivot row in order.  Rows beyond the returned count are zero.
template <Scalar S>
std::vector<size_t> rref(Mat<S>& m) {
    std::vector<size_t> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && is_zero(m[p][c])) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        S inv = S(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(m[i][c])) continue;
            S f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <Scalar S>
size_t rank(Mat<S> m) { return rref(m).size(); }

/// Basis of {x : m x = 0}.
template <Scalar S>
Mat<S> nullspace(Mat<S> m, size_t cols) {
    std::vector<size_t> piv = rref(m);
    std::vector<bool> is_piv(cols, false);
    for (size_t c : piv) is_piv[c] = true;
    Mat<S> basis;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_piv[fc]) continue;
        Vec<S> v(cols, S(0));
        v[fc] = S(1);
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solve A x = b for square A; nullopt when singular.
template <Scalar S>
std::optional<Vec<S>> solve_square(Mat<S> a, Vec<S> b) {
    size_t n = a.size();
    for (size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
    std::vector<size_t> piv = rref(a);
    if (piv.size() != n) return std::nullopt;
    for (size_t r = 0; r < n; ++r)
        if (piv[r] != r) return std::nullopt;  // pivot landed in the b column
    Vec<S> x(n);
    for (size_t r = 0; r < n; ++r) x[r] = a[r][n];
    return x;
}

template <Scalar S>
S det(Mat<S> a) {
    size_t n = a.size();
    S d(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && is_zero(a[p][c])) ++p;
        if (p == n) return S(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d = d * a[c][c];
        S inv = S(1) / a[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (is_zero(a[i][c])) continue;
            S f = a[i][c] * inv;
            for (size_t j = c; j < n; ++j) a[i][j] = a[i][j] - f * a[c][j];
        }
    }
    return d;
}

}  // namespace ctx
