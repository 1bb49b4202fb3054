#pragma once

#include <cstddef>
#include <vector>

#include "starconn/scalar.hpp"

namespace starconn {

template <class C>
using Matrix = std::vector<std::vector<C>>;

template <class C>
Matrix<C> zero_matrix(int n) {
    return Matrix<C>(static_cast<std::size_t>(n), std::vector<C>(static_cast<std::size_t>(n), C(0L)));
}

template <class C>
Matrix<C> identity_matrix(int n) {
    Matrix<C> m = zero_matrix<C>(n);
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = C(1L);
    return m;
}

template <class C>
Matrix<C> transpose(const Matrix<C>& a) {
    std::size_t n = a.size();
    Matrix<C> r = a;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r[i][j] = a[j][i];
    return r;
}

template <class C>
Matrix<C> matmul(const Matrix<C>& a, const Matrix<C>& b) {
    std::size_t n = a.size();
    Matrix<C> r = zero_matrix<C>(static_cast<int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

template <class C>
Matrix<C> matadd(Matrix<C> a, const Matrix<C>& b, const C& scale = C(1L)) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a[i][j] += scale * b[i][j];
    return a;
}

template <class C>
Matrix<C> matscale(Matrix<C> a, const C& s) {
    for (auto& row : a)
        for (auto& v : row) v *= s;
    return a;
}

/// Gauss-Jordan inverse over a field; throws MathError when singular.
template <class C>
Matrix<C> invert(Matrix<C> a) {
    int n = static_cast<int>(a.size());
    Matrix<C> inv = identity_matrix<C>(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        while (piv < n && a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)].is_zero()) ++piv;
        if (piv == n) throw MathError("singular matrix");
        std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(col)]);
        std::swap(inv[static_cast<std::size_t>(piv)], inv[static_cast<std::size_t>(col)]);
        auto& prow = a[static_cast<std::size_t>(col)];
        auto& pinv = inv[static_cast<std::size_t>(col)];
        C p = prow[static_cast<std::size_t>(col)];
        for (int j = 0; j < n; ++j) {
            prow[static_cast<std::size_t>(j)] = prow[static_cast<std::size_t>(j)] / p;
            pinv[static_cast<std::size_t>(j)] = pinv[static_cast<std::size_t>(j)] / p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            C f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (f.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
                inv[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -= f * pinv[static_cast<std::size_t>(j)];
            }
        }
    }
    return inv;
}

/// Determinant by elimination over a field.
template <class C>
C determinant(Matrix<C> a) {
    int n = static_cast<int>(a.size());
    C det(1L);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        while (piv < n && a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)].is_zero()) ++piv;
        if (piv == n) return C(0L);
        if (piv != col) {
            std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(col)]);
            det = -det;
        }
        const auto& prow = a[static_cast<std::size_t>(col)];
        C p = prow[static_cast<std::size_t>(col)];
        det *= p;
        for (int r = col + 1; r < n; ++r) {
            C f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / p;
            if (f.is_zero()) continue;
            for (int j = col; j < n; ++j)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
        }
    }
    return det;
}

}  // namespace starconn
