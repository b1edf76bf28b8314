/**
 * @file genfun.hpp
 * @brief The spatial generating matrix P of a generator set, in all of its variants.
 *
 * With S = sum_i X_i (x) conj(X_i) (the conjugate only matters for complex data):
 *
 *   ResolventReal / ResolventConjugate : P = psi((I - S)^-1)
 *   ResolventNonUnital                 : P = psi(S (I - S)^-1)
 *   PowerForm(k)                       : P = psi((I + S)^k), or psi(S (I + S)^(k-1)) when non-unital
 *
 * The range of P is the vectorized algebra and its rank is the algebra's dimension. The resolvent
 * forms need a contraction; Scale::automatic() divides S by B = ceil(sum ||X_i||_F^2) + 1, which is
 * the same as dividing every generator by sqrt(B) and always yields ||S||_F < 1.
 */
#pragma once

#include <algebragen/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace algebragen {

template <Scalar T>
struct GeneratorSet {
    std::size_t n = 0;
    std::vector<Mat<T>> gens;
    bool unital = true;
    ScalarKind kind = ScalarTraits<T>::default_kind();

    GeneratorSet() = default;
    GeneratorSet(std::size_t side, std::vector<Mat<T>> generators, bool is_unital = true,
                 ScalarKind k = ScalarTraits<T>::default_kind())
        : n(side), gens(std::move(generators)), unital(is_unital), kind(k) {
        validate();
    }

    /// Throws ShapeMismatch / KindMismatch on a malformed set.
    void validate() const {
        if (n == 0) throw ShapeMismatch("generator side must be positive");
        for (const auto& g : gens) {
            if (g.rows() != n || g.cols() != n) {
                throw ShapeMismatch("generator of shape " + g.shape_string() + " in a set of side " + std::to_string(n));
            }
            if (!(g.kind() == kind)) throw KindMismatch("generator kind " + g.kind().name() + " in a " + kind.name() + " set");
        }
    }

    std::size_t d() const { return gens.size(); }
};

enum class VariantTag { ResolventReal, ResolventConjugate, ResolventNonUnital, PowerForm };

struct GenFunVariant {
    VariantTag tag = VariantTag::ResolventReal;
    std::uint64_t k = 0;  ///< exponent, PowerForm only

    static GenFunVariant resolvent_real() { return {VariantTag::ResolventReal, 0}; }
    static GenFunVariant resolvent_conjugate() { return {VariantTag::ResolventConjugate, 0}; }
    static GenFunVariant resolvent_nonunital() { return {VariantTag::ResolventNonUnital, 0}; }
    static GenFunVariant power_form(std::uint64_t k) {
        if (k == 0) throw InvalidArgument("power form exponent must be at least 1");
        return {VariantTag::PowerForm, k};
    }

    bool resolvent() const { return tag != VariantTag::PowerForm; }

    std::string name() const {
        switch (tag) {
            case VariantTag::ResolventReal: return "resolvent";
            case VariantTag::ResolventConjugate: return "resolvent-conjugate";
            case VariantTag::ResolventNonUnital: return "resolvent-nonunital";
            case VariantTag::PowerForm: return "power:" + std::to_string(k);
        }
        return "?";
    }
};

/// How S is rescaled before the resolvent is taken. The value is the divisor of S.
struct Scale {
    enum class Mode { Auto, Explicit, None };
    Mode mode = Mode::Auto;
    Rational value = 1;

    static Scale automatic() { return {Mode::Auto, 1}; }
    static Scale none() { return {Mode::None, 1}; }
    static Scale explicit_value(Rational s) {
        if (sgn(s) <= 0) throw InvalidArgument("explicit scale must be positive");
        return {Mode::Explicit, std::move(s)};
    }
};

/// Which cheap consistent norm certified ||S|| < 1.
struct NormCheck {
    bool passed = false;
    std::string norm;   ///< "frobenius", "l1", "linf" or empty
    double value = 0;   ///< that norm (not squared)
};

template <Scalar T>
struct PReport {
    Mat<T> P;
    GenFunVariant variant;
    Rational scale = 1;  ///< S was divided by this (generators by its square root)
    std::size_t rank = 0;
    double tol = 0.0;
    bool conditioning_flag = false;
    std::vector<double> spectrum;  ///< singular values of P (approximate kinds only)
    double closure_defect = 0.0;   ///< approximate kinds: how far the numerical range is from an algebra
    NormCheck norm_check;
};

/// Relative closure defect above which the numerical range is reported as not an algebra.
inline constexpr double kClosureTol = 1e-6;

/// sum_i kron(X_i, X_i), or kron(X_i, conj(X_i)) when `conjugate`.
template <Scalar T>
Mat<T> sum_kron(const GeneratorSet<T>& gs, bool conjugate) {
    Mat<T> s(gs.n * gs.n, gs.n * gs.n, gs.kind);
    for (const auto& x : gs.gens) s += kron(x, conjugate ? x.conj() : x);
    return s;
}

/// B = ceil(sum_i ||X_i||_F^2) + 1.
template <NormedScalar T>
Integer scale_bound(const GeneratorSet<T>& gs) {
    magnitude_t<T> total = 0;
    for (const auto& x : gs.gens) total += frobenius_sq(x);
    return ceil_to_integer(total) + 1;
}

/// k = min(n^2, ceil(2 n log2 n + 4 n)).
inline std::uint64_t default_power_exponent(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("power exponent needs n >= 1");
    const double nd = static_cast<double>(n);
    const auto shitov = static_cast<std::uint64_t>(std::ceil(2.0 * nd * std::log2(nd) + 4.0 * nd));
    return std::min(n * n, shitov);
}

template <NormedScalar T>
NormCheck check_contraction(const Mat<T>& s) {
    NormCheck nc;
    const auto fro_sq = frobenius_sq(s);
    const auto l1 = norm(s, NormKind::L1);
    const auto linf = norm(s, NormKind::LInf);
    auto to_double = [](const magnitude_t<T>& x) {
        if constexpr (std::is_same_v<magnitude_t<T>, Rational>) {
            return x.get_d();
        } else {
            return static_cast<double>(x);
        }
    };
    if (fro_sq < 1) {
        nc = {true, "frobenius", std::sqrt(to_double(fro_sq))};
    } else if (l1 < 1) {
        nc = {true, "l1", to_double(l1)};
    } else if (linf < 1) {
        nc = {true, "linf", to_double(linf)};
    } else {
        nc = {false, "", std::sqrt(to_double(fro_sq))};
    }
    return nc;
}

/**
 * Largest relative distance from span(U) of the generators, of I (unital sets) and of X E, E X
 * for every basis element E = unvec(u_c) and generator X. Zero up to roundoff exactly when the
 * orthonormal columns U span a subspace containing the generators and closed under multiplication
 * by them.
 */
template <ApproxScalar T>
double closure_defect(const GeneratorSet<T>& gs, const Mat<T>& u) {
    const Mat<T> ua = u.adjoint();
    auto defect = [&](const Mat<T>& m) {
        const Mat<T> v = vec(m);
        const double nv = numeric::norm2(v);
        if (nv == 0.0) return 0.0;
        return numeric::norm2(Mat<T>(v - u * (ua * v))) / nv;
    };
    double worst = gs.unital ? defect(Mat<T>::identity(gs.n, gs.kind)) : 0.0;
    for (const auto& x : gs.gens) worst = std::max(worst, defect(x));
    for (std::size_t c = 0; c < u.cols(); ++c) {
        const Mat<T> e = unvec_column(u, c, gs.n, gs.n);
        for (const auto& x : gs.gens) worst = std::max({worst, defect(x * e), defect(e * x)});
    }
    return worst;
}

struct BuildOptions {
    std::optional<double> rank_tol;  ///< approximate kinds; default max(rows,cols)*eps*sigma_max
};

/**
 * Builds P and computes its rank.
 *
 * Throws NormBoundViolation when a resolvent variant is requested with a scale under which no
 * cheap norm of S is below one, and SingularMatrix if I - S still cannot be inverted.
 */
template <NormedScalar T>
PReport<T> build_p(const GeneratorSet<T>& gs, const GenFunVariant& variant, const Scale& scale = Scale::automatic(),
                   const BuildOptions& opts = {}) {
    gs.validate();
    const bool conjugate = variant.tag != VariantTag::ResolventReal;
    Mat<T> s = sum_kron(gs, conjugate);

    PReport<T> rep;
    rep.variant = variant;
    switch (scale.mode) {
        case Scale::Mode::Auto: rep.scale = Rational(scale_bound(gs)); break;
        case Scale::Mode::Explicit: rep.scale = scale.value; break;
        case Scale::Mode::None: rep.scale = 1; break;
    }
    if (rep.scale != 1) s /= ScalarTraits<T>::from_rational(rep.scale, gs.kind);

    const std::size_t dim = gs.n * gs.n;
    const Mat<T> id = Mat<T>::identity(dim, gs.kind);
    Mat<T> core;
    if (variant.resolvent()) {
        rep.norm_check = check_contraction(s);
        if (!rep.norm_check.passed) {
            throw NormBoundViolation("no consistent norm of the Kronecker sum is below 1 (Frobenius " +
                                     std::to_string(rep.norm_check.value) + "); rescale the generators");
        }
        const Mat<T> resolvent = inverse(Mat<T>(id - s));
        core = variant.tag == VariantTag::ResolventNonUnital ? Mat<T>(s * resolvent) : resolvent;
    } else {
        const Mat<T> shifted = id + s;
        core = gs.unital ? power(shifted, variant.k) : Mat<T>(s * power(shifted, variant.k - 1));
    }
    rep.P = psi(core, BlockShape::square(gs.n));

    const auto rr = rank_report(rep.P, opts.rank_tol);
    rep.rank = rr.rank;
    rep.tol = rr.tol;
    rep.conditioning_flag = rr.conditioning_flag;
    rep.spectrum = rr.singular_values;
    if constexpr (!ScalarTraits<T>::exact) {
        rep.closure_defect = closure_defect(gs, numeric::range_basis(rep.P, rep.tol));
        if (rep.closure_defect > kClosureTol) rep.conditioning_flag = true;
    }
    return rep;
}

/// Resolvent variant implied by the set: conjugate form for complex data, non-unital when asked.
template <Scalar T>
GenFunVariant auto_variant(const GeneratorSet<T>& gs) {
    if (!gs.unital) return GenFunVariant::resolvent_nonunital();
    if (gs.kind.tag == ScalarTag::ApproxComplex) return GenFunVariant::resolvent_conjugate();
    return GenFunVariant::resolvent_real();
}

}  // namespace algebragen
