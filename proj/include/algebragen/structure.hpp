/**
 * @file structure.hpp
 * @brief Vectorization, the block realignment psi, the Kronecker product, and cheap norms.
 *
 * Conventions used throughout the library:
 *
 * - `vec` stacks columns: entry (i, j) of an r x c matrix lands at coordinate i + j*r (0-based).
 * - `kron(A, B)` is the block matrix whose (k, l) block is b_kl * A. This is the mirror image of
 *   the textbook convention, and it is the one for which psi(kron(A, B)) = vec(A) vec(B)^T.
 * - `psi` views an (n*m) x (p*q) matrix as an m x q grid of n x p blocks and returns the
 *   (n*p) x (m*q) matrix whose columns are vec of the blocks, taken in column-major block order.
 */
#pragma once

#include <algebragen/matrix.hpp>

#include <algorithm>
#include <cmath>

namespace algebragen {

/// Parameters of psi: blocks are n x p, arranged in an m x q grid.
struct BlockShape {
    std::size_t n = 1;
    std::size_t m = 1;
    std::size_t p = 1;
    std::size_t q = 1;

    static BlockShape square(std::size_t side) { return {side, side, side, side}; }
    BlockShape transposed() const { return {n, p, m, q}; }
};

template <Scalar T>
Mat<T> kron(const Mat<T>& a, const Mat<T>& b) {
    a.check_kind(b);
    const std::size_t ra = a.rows();
    const std::size_t ca = a.cols();
    Mat<T> r(ra * b.rows(), ca * b.cols(), a.kind());
    for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
            const T& bkl = b(k, l);
            if (ScalarTraits<T>::is_zero(bkl)) continue;
            for (std::size_t i = 0; i < ra; ++i)
                for (std::size_t j = 0; j < ca; ++j) r(k * ra + i, l * ca + j) = a(i, j) * bkl;
        }
    }
    return r;
}

template <Scalar T>
Mat<T> vec(const Mat<T>& a) {
    Mat<T> v(a.rows() * a.cols(), 1, a.kind());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) v(i + j * a.rows(), 0) = a(i, j);
    return v;
}

/// Inverse of vec. Throws ShapeMismatch unless `v` is a column with rows*cols entries.
template <Scalar T>
Mat<T> unvec(const Mat<T>& v, std::size_t rows, std::size_t cols) {
    if (v.cols() != 1 || v.rows() != rows * cols) {
        throw ShapeMismatch("unvec of " + v.shape_string() + " into " + std::to_string(rows) + "x" +
                            std::to_string(cols));
    }
    Mat<T> a(rows, cols, v.kind());
    for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < rows; ++i) a(i, j) = v(i + j * rows, 0);
    return a;
}

/// Column `c` of a matrix, devectorized.
template <Scalar T>
Mat<T> unvec_column(const Mat<T>& cols_of_vecs, std::size_t c, std::size_t rows, std::size_t cols) {
    return unvec(cols_of_vecs.column(c), rows, cols);
}

/// Block realignment. Self-inverse when n = m = p = q; in general
/// psi(psi(A, s), s.transposed()) = A.
template <Scalar T>
Mat<T> psi(const Mat<T>& a, const BlockShape& s) {
    if (a.rows() != s.n * s.m || a.cols() != s.p * s.q) {
        throw ShapeMismatch("psi of " + a.shape_string() + " with blocks " + std::to_string(s.n) + "x" +
                            std::to_string(s.p) + " in a " + std::to_string(s.m) + "x" + std::to_string(s.q) +
                            " grid");
    }
    Mat<T> r(s.n * s.p, s.m * s.q, a.kind());
    for (std::size_t l = 0; l < s.q; ++l)
        for (std::size_t j = 0; j < s.m; ++j)
            for (std::size_t k = 0; k < s.p; ++k)
                for (std::size_t i = 0; i < s.n; ++i) r(i + k * s.n, j + l * s.m) = a(i + j * s.n, k + l * s.p);
    return r;
}

/// psi for the square case n = m = p = q = sqrt(rows).
template <Scalar T>
Mat<T> psi(const Mat<T>& a) {
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(a.rows()))));
    if (side * side != a.rows() || a.rows() != a.cols()) {
        throw ShapeMismatch("square psi needs an n^2 x n^2 matrix, got " + a.shape_string());
    }
    return psi(a, BlockShape::square(side));
}

enum class NormKind { Frobenius, L1, LInf };

/// Sum of |a_ij|^2. Exact for rationals.
template <NormedScalar T>
magnitude_t<T> frobenius_sq(const Mat<T>& a) {
    magnitude_t<T> s = 0;
    for (const auto& x : a.data()) s += ScalarTraits<T>::abs_sq(x);
    return s;
}

/// Frobenius, max column sum (L1) or max row sum (LInf).
/// For Rational the Frobenius value is the squared norm, so the result stays exact.
template <NormedScalar T>
magnitude_t<T> norm(const Mat<T>& a, NormKind which) {
    using Traits = ScalarTraits<T>;
    switch (which) {
        case NormKind::Frobenius: {
            magnitude_t<T> s = frobenius_sq(a);
            if constexpr (Traits::exact) {
                return s;
            } else {
                return std::sqrt(s);
            }
        }
        case NormKind::L1: {
            magnitude_t<T> best = 0;
            for (std::size_t j = 0; j < a.cols(); ++j) {
                magnitude_t<T> s = 0;
                for (std::size_t i = 0; i < a.rows(); ++i) s += Traits::abs(a(i, j));
                if (s > best) best = s;
            }
            return best;
        }
        case NormKind::LInf: {
            magnitude_t<T> best = 0;
            for (std::size_t i = 0; i < a.rows(); ++i) {
                magnitude_t<T> s = 0;
                for (std::size_t j = 0; j < a.cols(); ++j) s += Traits::abs(a(i, j));
                if (s > best) best = s;
            }
            return best;
        }
    }
    return magnitude_t<T>(0);
}

}  // namespace algebragen
