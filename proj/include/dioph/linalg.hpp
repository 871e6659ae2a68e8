#pragma once

#include <utility>
#include <vector>

#include "dioph/error.hpp"
#include "dioph/rational.hpp"

namespace dioph {

template <class T>
using Matrix = std::vector<std::vector<T>>;

inline bool is_zero(const Rational& x) { return x == 0; }

// In-place reduced row echelon form over a field; zero rows are removed.
// Returns the pivot columns. T needs +, -, *, / and a free is_zero(T).
template <class T>
std::vector<int> rref(Matrix<T>& M) {
    std::vector<int> pivots;
    if (M.empty()) return pivots;
    size_t ncols = M[0].size();
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < M.size(); ++col) {
        size_t sel = row;
        while (sel < M.size() && is_zero(M[sel][col])) ++sel;
        if (sel == M.size()) continue;
        std::swap(M[row], M[sel]);
        T inv = T(1) / M[row][col];
        for (size_t j = col; j < ncols; ++j) M[row][j] = M[row][j] * inv;
        for (size_t i = 0; i < M.size(); ++i) {
            if (i == row || is_zero(M[i][col])) continue;
            T f = M[i][col];
            for (size_t j = col; j < ncols; ++j)
                if (!is_zero(M[row][j])) M[i][j] = M[i][j] - f * M[row][j];
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    M.resize(row);
    return pivots;
}

template <class T>
int rank(Matrix<T> M) {
    return static_cast<int>(rref(M).size());
}

// Basis (as rows) of {v : M v = 0}; ncols is needed when M has no rows.
template <class T>
Matrix<T> nullspace(Matrix<T> M, size_t ncols) {
    auto piv = rref(M);
    std::vector<bool> is_pivot(ncols, false);
    for (int p : piv) is_pivot[p] = true;
    Matrix<T> out;
    for (size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(ncols, T(0));
        v[f] = T(1);
        for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = T(0) - M[i][f];
        out.push_back(std::move(v));
    }
    return out;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& M, size_t ncols) {
    Matrix<T> t(ncols, std::vector<T>(M.size(), T(0)));
    for (size_t i = 0; i < M.size(); ++i)
        for (size_t j = 0; j < ncols; ++j) t[j][i] = M[i][j];
    return t;
}

// Row spaces: canonical basis of the sum, and of the intersection.
template <class T>
Matrix<T> row_space_sum(const Matrix<T>& A, const Matrix<T>& B) {
    Matrix<T> M = A;
    M.insert(M.end(), B.begin(), B.end());
    rref(M);
    return M;
}

template <class T>
Matrix<T> row_space_intersection(const Matrix<T>& A, const Matrix<T>& B, size_t ncols) {
    if (A.empty() || B.empty()) return {};
    // Solve a*A = b*B: columns of the system are the rows of A and -B.
    Matrix<T> sys(ncols, std::vector<T>(A.size() + B.size(), T(0)));
    for (size_t j = 0; j < ncols; ++j) {
        for (size_t i = 0; i < A.size(); ++i) sys[j][i] = A[i][j];
        for (size_t i = 0; i < B.size(); ++i) sys[j][A.size() + i] = T(0) - B[i][j];
    }
    Matrix<T> ns = nullspace(sys, A.size() + B.size());
    Matrix<T> out;
    for (const auto& v : ns) {
        std::vector<T> w(ncols, T(0));
        for (size_t i = 0; i < A.size(); ++i)
            if (!is_zero(v[i]))
                for (size_t j = 0; j < ncols; ++j) w[j] = w[j] + v[i] * A[i][j];
        out.push_back(std::move(w));
    }
    rref(out);
    return out;
}

// Determinant of a square matrix by Gaussian elimination over a field.
template <class T>
T determinant(Matrix<T> M) {
    size_t n = M.size();
    T det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t sel = c;
        while (sel < n && is_zero(M[sel][c])) ++sel;
        if (sel == n) return T(0);
        if (sel != c) {
            std::swap(M[sel], M[c]);
            det = T(0) - det;
        }
        det = det * M[c][c];
        T inv = T(1) / M[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (is_zero(M[i][c])) continue;
            T f = M[i][c] * inv;
            for (size_t j = c; j < n; ++j) M[i][j] = M[i][j] - f * M[c][j];
        }
    }
    return det;
}

template <class T>
std::vector<T> mat_vec(const Matrix<T>& M, const std::vector<T>& v) {
    std::vector<T> out(M.size(), T(0));
    for (size_t i = 0; i < M.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j)
            if (!is_zero(M[i][j]) && !is_zero(v[j])) out[i] = out[i] + M[i][j] * v[j];
    return out;
}

// Integer matrices.
using IntMatrix = Matrix<Integer>;

// gcd of the maximal (k x k) minors of a k x N integer matrix of rank k,
// via a diagonalization by unimodular row and column operations.
Integer maximal_minor_gcd(IntMatrix B);

// Scale each row of a rational matrix to a primitive integer row.
IntMatrix primitive_integer_rows(const Matrix<Rational>& M);

}  // namespace dioph
