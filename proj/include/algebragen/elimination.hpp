/**
 * @file elimination.hpp
 * @brief Gauss-Jordan elimination shared by every backend.
 *
 * Columns are processed left to right, so the pivot columns are the leftmost independent
 * columns of the input. Exact kinds pick the nonzero candidate with the smallest bit size;
 * approximate kinds pick the largest magnitude and treat anything at or below `zero_tol` as zero.
 */
#pragma once

#include <algebragen/matrix.hpp>

#include <limits>
#include <optional>
#include <vector>

namespace algebragen {

template <Scalar T>
struct Echelon {
    Mat<T> reduced;                   ///< reduced row echelon form
    std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

namespace detail {

template <Scalar T>
bool negligible(const T& x, double zero_tol) {
    if constexpr (ScalarTraits<T>::exact) {
        return ScalarTraits<T>::is_zero(x);
    } else {
        return ScalarTraits<T>::abs(x) <= zero_tol;
    }
}

/// Row index in [from, rows) holding the preferred pivot of column `col`, if any.
template <Scalar T>
std::optional<std::size_t> choose_pivot(const Mat<T>& a, std::size_t from, std::size_t col, double zero_tol) {
    std::optional<std::size_t> best;
    for (std::size_t r = from; r < a.rows(); ++r) {
        const T& x = a(r, col);
        if (negligible(x, zero_tol)) continue;
        if (!best) {
            best = r;
            if constexpr (std::is_same_v<T, Zp>) break;
            continue;
        }
        const auto w = ScalarTraits<T>::pivot_weight(x);
        const auto wb = ScalarTraits<T>::pivot_weight(a(*best, col));
        if constexpr (ScalarTraits<T>::exact) {
            if (w < wb) best = r;
        } else {
            if (w > wb) best = r;
        }
    }
    return best;
}

template <Scalar T>
void swap_rows(Mat<T>& a, std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r1, j), a(r2, j));
}

template <Scalar T>
double max_abs(const Mat<T>& a) {
    double m = 0.0;
    if constexpr (!ScalarTraits<T>::exact) {
        for (const auto& x : a.data()) m = std::max(m, static_cast<double>(ScalarTraits<T>::abs(x)));
    }
    return m;
}

/// Default threshold below which an approximate pivot counts as zero.
template <Scalar T>
double default_zero_tol(const Mat<T>& a) {
    if constexpr (ScalarTraits<T>::exact) {
        return 0.0;
    } else {
        return static_cast<double>(std::max(a.rows(), a.cols())) * std::numeric_limits<double>::epsilon() *
               max_abs(a);
    }
}

}  // namespace detail

/// Reduced row echelon form. `zero_tol` is ignored for exact kinds; negative selects the default.
template <Scalar T>
Echelon<T> echelon(Mat<T> a, double zero_tol = -1.0) {
    if (zero_tol < 0) zero_tol = detail::default_zero_tol(a);
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        auto piv = detail::choose_pivot(a, row, col, zero_tol);
        if (!piv) {
            if constexpr (!ScalarTraits<T>::exact) {
                for (std::size_t r = row; r < a.rows(); ++r) a(r, col) = a.zero();
            }
            continue;
        }
        detail::swap_rows(a, row, *piv);
        const T inv = a.one() / a(row, col);
        for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row) continue;
            const T f = a(r, col);
            if (ScalarTraits<T>::is_zero(f)) continue;
            for (std::size_t j = col; j < a.cols(); ++j) a(r, j) -= f * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(a), std::move(pivots)};
}

/// Exact pivot count; for approximate kinds this is a pivoted estimate (see numeric.hpp for SVD rank).
template <Scalar T>
std::size_t elimination_rank(const Mat<T>& a) {
    return echelon(a).pivots.size();
}

/// A^-1 by Gauss-Jordan. Throws SingularMatrix on a zero (or sub-tolerance) pivot.
template <Scalar T>
Mat<T> inverse(const Mat<T>& a, double zero_tol = -1.0) {
    if (!a.square()) throw ShapeMismatch("inverse of non-square " + a.shape_string());
    const std::size_t n = a.rows();
    if (zero_tol < 0) zero_tol = detail::default_zero_tol(a);
    Mat<T> w = hcat(a, Mat<T>::identity(n, a.kind()));
    for (std::size_t col = 0; col < n; ++col) {
        auto piv = detail::choose_pivot(w, col, col, zero_tol);
        if (!piv) throw SingularMatrix("matrix is singular (no pivot in column " + std::to_string(col) + ")");
        detail::swap_rows(w, col, *piv);
        const T inv = w.one() / w(col, col);
        for (std::size_t j = col; j < 2 * n; ++j) w(col, j) *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const T f = w(r, col);
            if (ScalarTraits<T>::is_zero(f)) continue;
            for (std::size_t j = col; j < 2 * n; ++j) w(r, j) -= f * w(col, j);
        }
    }
    Mat<T> r(n, n, a.kind());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = w(i, n + j);
    return r;
}

/// Determinant by elimination (exact kinds).
template <ExactScalar T>
T determinant(Mat<T> a) {
    if (!a.square()) throw ShapeMismatch("determinant of non-square " + a.shape_string());
    T det = a.one();
    const std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        auto piv = detail::choose_pivot(a, col, col, 0.0);
        if (!piv) return a.zero();
        if (*piv != col) {
            detail::swap_rows(a, col, *piv);
            det = -det;
        }
        const T p = a(col, col);
        det *= p;
        for (std::size_t r = col + 1; r < n; ++r) {
            const T f = a(r, col) / p;
            if (ScalarTraits<T>::is_zero(f)) continue;
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

/// Basis of {x : A x = 0} as columns, one per free column of the echelon form.
template <ExactScalar T>
Mat<T> exact_null_space(const Mat<T>& a) {
    const auto e = echelon(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    Mat<T> ns(a.cols(), a.cols() - e.pivots.size(), a.kind());
    std::size_t c = 0;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        ns(f, c) = a.one();
        for (std::size_t r = 0; r < e.pivots.size(); ++r) ns(e.pivots[r], c) = -e.reduced(r, f);
        ++c;
    }
    return ns;
}

/// Some x with A x = b, or nullopt when b is outside the column space.
template <ExactScalar T>
std::optional<Mat<T>> exact_solve(const Mat<T>& a, const Mat<T>& b) {
    if (b.rows() != a.rows() || b.cols() != 1) {
        throw ShapeMismatch("solve with " + a.shape_string() + " and right-hand side " + b.shape_string());
    }
    const auto e = echelon(hcat(a, b));
    if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
    Mat<T> x(a.cols(), 1, a.kind());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x(e.pivots[r], 0) = e.reduced(r, a.cols());
    return x;
}

}  // namespace algebragen
