/**
 * @file numeric.hpp
 * @brief SVD-backed rank, range, null space and least squares for the floating-point backends.
 *
 * The default rank tolerance is max(rows, cols) * eps * sigma_max. A rank is flagged as
 * ill-conditioned when the spectrum gives no clean cut: the retained/discarded ratio
 * sigma_r / sigma_{r+1} is below kConditioningGap, or a singular value on either side lies
 * within that factor of the tolerance.
 */
#pragma once

#include <algebragen/matrix.hpp>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace algebragen {

inline constexpr double kConditioningGap = 1e3;

struct RankReport {
    std::size_t rank = 0;
    double tol = 0.0;                      ///< 0 for exact kinds
    bool conditioning_flag = false;
    std::vector<double> singular_values;   ///< descending; empty for exact kinds
};

namespace numeric {

template <ApproxScalar T>
using EigenMat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <ApproxScalar T>
EigenMat<T> to_eigen(const Mat<T>& a) {
    EigenMat<T> e(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
    return e;
}

template <ApproxScalar T>
Mat<T> from_eigen(const EigenMat<T>& e) {
    Mat<T> a(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return a;
}

template <ApproxScalar T>
struct Svd {
    std::vector<double> sigma;
    EigenMat<T> u;  ///< thin
    EigenMat<T> v;  ///< full when requested
};

template <ApproxScalar T>
Svd<T> svd(const Mat<T>& a, bool full_v = false) {
    Svd<T> out;
    if (a.rows() == 0 || a.cols() == 0) {
        out.u = EigenMat<T>(static_cast<Eigen::Index>(a.rows()), 0);
        out.v = EigenMat<T>::Identity(static_cast<Eigen::Index>(a.cols()), static_cast<Eigen::Index>(a.cols()));
        return out;
    }
    const unsigned opts = Eigen::ComputeThinU | (full_v ? Eigen::ComputeFullV : Eigen::ComputeThinV);
    Eigen::JacobiSVD<EigenMat<T>> s(to_eigen(a), opts);
    const auto& sv = s.singularValues();
    out.sigma.assign(sv.data(), sv.data() + sv.size());
    out.u = s.matrixU();
    out.v = s.matrixV();
    return out;
}

inline double default_tol(std::size_t rows, std::size_t cols, double sigma_max) {
    return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() * sigma_max;
}

/// Rank, tolerance and conditioning flag from a descending spectrum. The flag is raised when the
/// smallest retained value is within kConditioningGap of the tolerance or of the largest discarded one.
inline RankReport classify(std::vector<double> sigma, double tol) {
    RankReport rep;
    rep.tol = tol;
    std::size_t r = 0;
    while (r < sigma.size() && sigma[r] > tol) ++r;
    rep.rank = r;
    bool flag = false;
    if (r > 0 && sigma[r - 1] < kConditioningGap * tol) flag = true;
    if (r > 0 && r < sigma.size() && sigma[r - 1] < kConditioningGap * sigma[r]) flag = true;
    rep.conditioning_flag = flag;
    rep.singular_values = std::move(sigma);
    return rep;
}

template <ApproxScalar T>
RankReport rank_report(const Mat<T>& a, std::optional<double> tol = std::nullopt) {
    auto s = svd(a);
    const double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
    return classify(std::move(s.sigma), tol.value_or(default_tol(a.rows(), a.cols(), smax)));
}

/// Orthonormal basis of the numerical column space.
template <ApproxScalar T>
Mat<T> range_basis(const Mat<T>& a, std::optional<double> tol = std::nullopt) {
    auto s = svd(a);
    const double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
    const auto rep = classify(s.sigma, tol.value_or(default_tol(a.rows(), a.cols(), smax)));
    return from_eigen<T>(s.u.leftCols(static_cast<Eigen::Index>(rep.rank)));
}

/// Orthonormal basis of the numerical null space.
template <ApproxScalar T>
Mat<T> null_space(const Mat<T>& a, std::optional<double> tol = std::nullopt) {
    auto s = svd(a, true);
    const double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
    const auto rep = classify(s.sigma, tol.value_or(default_tol(a.rows(), a.cols(), smax)));
    const auto r = static_cast<Eigen::Index>(rep.rank);
    return from_eigen<T>(s.v.rightCols(s.v.cols() - r));
}

template <ApproxScalar T>
double norm2(const Mat<T>& v) {
    double s = 0.0;
    for (const auto& x : v.data()) s += ScalarTraits<T>::abs_sq(x);
    return std::sqrt(s);
}

/// Minimum-norm least-squares solution of A x = b and its residual ||b - A x||.
template <ApproxScalar T>
std::pair<Mat<T>, double> least_squares(const Mat<T>& a, const Mat<T>& b, std::optional<double> tol = std::nullopt) {
    if (b.rows() != a.rows() || b.cols() != 1) {
        throw ShapeMismatch("least squares with " + a.shape_string() + " and " + b.shape_string());
    }
    auto s = svd(a);
    const double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
    const auto rep = classify(s.sigma, tol.value_or(default_tol(a.rows(), a.cols(), smax)));
    const auto r = static_cast<Eigen::Index>(rep.rank);
    const EigenMat<T> eb = to_eigen(b);
    EigenMat<T> x = EigenMat<T>::Zero(static_cast<Eigen::Index>(a.cols()), 1);
    if (r > 0) {
        EigenMat<T> coeff = s.u.leftCols(r).adjoint() * eb;
        for (Eigen::Index k = 0; k < r; ++k) coeff(k, 0) /= s.sigma[static_cast<std::size_t>(k)];
        x = s.v.leftCols(r) * coeff;
    }
    const EigenMat<T> res = eb - to_eigen(a) * x;
    return {from_eigen<T>(x), res.norm()};
}

/// Smallest eigenvalue of the Hermitian part of a square matrix.
template <ApproxScalar T>
double min_hermitian_eigenvalue(const Mat<T>& a) {
    if (!a.square()) throw ShapeMismatch("eigenvalues of non-square " + a.shape_string());
    if (a.rows() == 0) return 0.0;
    const EigenMat<T> e = to_eigen(a);
    const EigenMat<T> h = (e + e.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<EigenMat<T>> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace numeric
}  // namespace algebragen
