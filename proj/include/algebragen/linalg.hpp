/**
 * @file linalg.hpp
 * @brief Rank and subspace operations with one entry point per operation for all backends.
 *
 * Exact kinds (Rational, Zp) go through elimination and ignore tolerances. Approximate kinds
 * go through the SVD in numeric.hpp.
 */
#pragma once

#include <algebragen/elimination.hpp>
#include <algebragen/matrix.hpp>
#include <algebragen/numeric.hpp>
#include <algebragen/structure.hpp>

#include <optional>

namespace algebragen {

/// Residual magnitude: float for approximate kinds, exact rational otherwise.
template <Scalar T>
using residual_t = std::conditional_t<ScalarTraits<T>::exact, Rational, double>;

template <Scalar T>
RankReport rank_report(const Mat<T>& a, std::optional<double> tol = std::nullopt) {
    if constexpr (ScalarTraits<T>::exact) {
        RankReport rep;
        rep.rank = elimination_rank(a);
        return rep;
    } else {
        return numeric::rank_report(a, tol);
    }
}

template <Scalar T>
std::size_t rank(const Mat<T>& a, std::optional<double> tol = std::nullopt) {
    return rank_report(a, tol).rank;
}

/// Columns spanning col(A): pivot columns of A (exact) or an orthonormal basis (approximate).
template <Scalar T>
Mat<T> range_basis(const Mat<T>& a, std::optional<double> tol = std::nullopt) {
    if constexpr (ScalarTraits<T>::exact) {
        const auto e = echelon(a);
        return a.columns(e.pivots);
    } else {
        return numeric::range_basis(a, tol);
    }
}

template <Scalar T>
struct InRange {
    bool member = false;
    /// Exact: 0 when member, else the squared distance from v to col(A) (Rational) or 1 (GF(p)).
    /// Approximate: least-squares residual ||v - A x||.
    residual_t<T> residual{};
};

/// Default relative residual tolerance for approximate membership.
inline constexpr double kDefaultMemberTol = 1e-8;

/// Is v in col(A)? Approximate verdicts use residual <= tol * max(1, ||v||).
template <Scalar T>
InRange<T> in_range(const Mat<T>& a, const Mat<T>& v, double tol = kDefaultMemberTol,
                    std::optional<double> rank_tol = std::nullopt) {
    if (v.cols() != 1 || v.rows() != a.rows()) {
        throw ShapeMismatch("in_range of " + v.shape_string() + " against " + a.shape_string());
    }
    a.check_kind(v);
    InRange<T> out;
    if constexpr (ScalarTraits<T>::exact) {
        if (exact_solve(a, v)) {
            out.member = true;
            out.residual = 0;
            return out;
        }
        out.member = false;
        if constexpr (std::is_same_v<T, Rational>) {
            const Mat<Rational> c = range_basis(a);
            Mat<Rational> proj(a.rows(), 1);
            if (c.cols() > 0) {
                const Mat<Rational> ct = c.transpose();
                const Mat<Rational> y = inverse(ct * c) * (ct * v);
                proj = c * y;
            }
            out.residual = frobenius_sq(Mat<Rational>(v - proj));
        } else {
            out.residual = 1;
        }
        return out;
    } else {
        auto [x, res] = numeric::least_squares(a, v, rank_tol);
        out.residual = res;
        out.member = res <= tol * std::max(1.0, numeric::norm2(v));
        return out;
    }
}

/// Basis of col(U) ∩ col(V) from the null space of [U | -V]. Columns of U and of V must be independent.
template <Scalar T>
Mat<T> subspace_intersect(const Mat<T>& u, const Mat<T>& v, std::optional<double> tol = std::nullopt) {
    if (u.rows() != v.rows()) throw ShapeMismatch("subspace_intersect of " + u.shape_string() + " and " + v.shape_string());
    u.check_kind(v);
    const Mat<T> block = hcat(u, Mat<T>(-v));
    Mat<T> ns;
    if constexpr (ScalarTraits<T>::exact) {
        ns = exact_null_space(block);
    } else {
        ns = numeric::null_space(block, tol);
    }
    Mat<T> xs(u.cols(), ns.cols(), u.kind());
    for (std::size_t i = 0; i < u.cols(); ++i)
        for (std::size_t j = 0; j < ns.cols(); ++j) xs(i, j) = ns(i, j);
    const Mat<T> w = u * xs;
    if constexpr (ScalarTraits<T>::exact) {
        return w;
    } else {
        return numeric::range_basis(w);
    }
}

/// A == A^H exactly (exact kinds) or to within `tol` elementwise.
template <Scalar T>
bool is_hermitian(const Mat<T>& a, double tol = 0.0) {
    if (!a.square()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i; j < a.cols(); ++j) {
            if constexpr (ScalarTraits<T>::exact) {
                if (!(a(i, j) == ScalarTraits<T>::conj(a(j, i)))) return false;
            } else {
                if (ScalarTraits<T>::abs(a(i, j) - ScalarTraits<T>::conj(a(j, i))) > tol) return false;
            }
        }
    }
    return true;
}

/// Hermitian positive semi-definite test. Exact kinds use symmetric elimination with
/// diagonal pivots; approximate kinds check the smallest eigenvalue against -tol.
template <NormedScalar T>
bool is_psd(const Mat<T>& a, std::optional<double> tol = std::nullopt) {
    if constexpr (ScalarTraits<T>::exact) {
        if (!is_hermitian(a)) return false;
        Mat<T> w = a;
        const std::size_t n = w.rows();
        std::vector<bool> done(n, false);
        for (std::size_t step = 0; step < n; ++step) {
            std::optional<std::size_t> piv;
            for (std::size_t i = 0; i < n; ++i) {
                if (done[i]) continue;
                if (sgn(w(i, i)) < 0) return false;
                if (sgn(w(i, i)) > 0 && !piv) piv = i;
            }
            if (!piv) {
                // Every remaining diagonal entry is zero; PSD forces the remaining block to vanish.
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        if (!done[i] && !done[j] && sgn(w(i, j)) != 0) return false;
                return true;
            }
            const std::size_t k = *piv;
            done[k] = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (done[i] || sgn(w(i, k)) == 0) continue;
                const T f = w(i, k) / w(k, k);
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[j]) w(i, j) -= f * w(k, j);
            }
        }
        return true;
    } else {
        const double smax = a.size() == 0 ? 0.0 : numeric::norm2(a);
        const double t = tol.value_or(numeric::default_tol(a.rows(), a.cols(), smax));
        if (!is_hermitian(a, std::max(t, 1e-12 * smax))) return false;
        return numeric::min_hermitian_eigenvalue(a) >= -t;
    }
}

}  // namespace algebragen
