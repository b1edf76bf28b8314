/**
 * @file algebra.hpp
 * @brief Membership, dimension, basis and intersection of the algebra generated by a set of matrices.
 *
 * Over R, C and Q the answers come from the generating matrix P: Z is in the algebra exactly when
 * vec Z lies in the range of P, and the dimension is rank P. Membership certificates (explicit word
 * combinations) always come from the word-span oracle. Over GF(p) the generating matrix carries no
 * guarantee, so every operation falls back to the word-span oracle there.
 */
#pragma once

#include <algebragen/genfun.hpp>
#include <algebragen/oracle.hpp>

#include <optional>
#include <string>
#include <vector>

namespace algebragen {

struct AlgebraOptions {
    Scale scale = Scale::automatic();
    std::optional<GenFunVariant> variant;  ///< default: auto_variant(gs)
    std::optional<double> rank_tol;
    double member_tol = kDefaultMemberTol;
    std::size_t degree_cap = 0;  ///< oracle cap for certificates; 0 means n^2
};

enum class BasisSource { PMethod, Oracle };

template <Scalar T>
struct AlgebraBasis {
    std::size_t dim = 0;
    std::vector<Mat<T>> basis;
    BasisSource source = BasisSource::PMethod;
};

template <Scalar T>
struct MembershipResult {
    bool member = false;
    residual_t<T> residual{};
    double tol = 0.0;  ///< relative residual tolerance that decided the verdict (approximate kinds)
    std::optional<Certificate<T>> certificate;
    std::string certificate_error;  ///< set when a certificate was requested but could not be produced
};

template <Scalar T>
constexpr bool uses_p_method = ScalarTraits<T>::has_norm;

/// P for the set, using the options' variant (or the automatic one) and scale.
template <NormedScalar T>
PReport<T> generating_matrix(const GeneratorSet<T>& gs, const AlgebraOptions& opts = {}) {
    return build_p(gs, opts.variant.value_or(auto_variant(gs)), opts.scale, BuildOptions{opts.rank_tol});
}

template <Scalar T>
std::size_t dimension(const GeneratorSet<T>& gs, const AlgebraOptions& opts = {}) {
    if constexpr (uses_p_method<T>) {
        return generating_matrix(gs, opts).rank;
    } else {
        return oracle_dimension(gs, OracleOptions{opts.degree_cap});
    }
}

namespace detail {

template <Scalar T>
void attach_certificate(MembershipResult<T>& out, const GeneratorSet<T>& gs, const Mat<T>& z,
                        const AlgebraOptions& opts) {
    const auto wb = word_span(gs, OracleOptions{opts.degree_cap});
    if (!wb.saturated) {
        out.certificate_error = "word span did not saturate within degree " + std::to_string(wb.degree_reached);
        return;
    }
    out.certificate = express(wb, gs, z, opts.member_tol);
    if (!out.certificate) out.certificate_error = "candidate not expressible in the word basis";
}

template <Scalar T>
void check_candidate(const GeneratorSet<T>& gs, const Mat<T>& z) {
    if (z.rows() != gs.n || z.cols() != gs.n) {
        throw ShapeMismatch("candidate " + z.shape_string() + " for generators of side " + std::to_string(gs.n));
    }
    if (!(z.kind() == gs.kind)) throw KindMismatch("candidate kind " + z.kind().name() + " vs " + gs.kind.name());
}

}  // namespace detail

/// Membership against an already computed P (reuse it across many candidates).
template <NormedScalar T>
MembershipResult<T> membership(const PReport<T>& p, const GeneratorSet<T>& gs, const Mat<T>& z,
                               bool want_certificate = false, const AlgebraOptions& opts = {}) {
    detail::check_candidate(gs, z);
    const auto ir = in_range(p.P, vec(z), opts.member_tol, opts.rank_tol);
    MembershipResult<T> out;
    out.member = ir.member;
    out.residual = ir.residual;
    out.tol = ScalarTraits<T>::exact ? 0.0 : opts.member_tol;
    if (want_certificate && out.member) detail::attach_certificate(out, gs, z, opts);
    return out;
}

template <Scalar T>
MembershipResult<T> membership(const GeneratorSet<T>& gs, const Mat<T>& z, bool want_certificate = false,
                               const AlgebraOptions& opts = {}) {
    if constexpr (uses_p_method<T>) {
        return membership(generating_matrix(gs, opts), gs, z, want_certificate, opts);
    } else {
        detail::check_candidate(gs, z);
        MembershipResult<T> out;
        const auto wb = word_span(gs, OracleOptions{opts.degree_cap});
        if (!wb.saturated) throw Error("word span did not saturate within degree " + std::to_string(wb.degree_reached));
        auto cert = express(wb, gs, z);
        out.member = cert.has_value();
        out.residual = out.member ? 0 : 1;
        if (want_certificate && cert) out.certificate = std::move(cert);
        return out;
    }
}

template <Scalar T>
std::vector<Mat<T>> devectorize_columns(const Mat<T>& cols, std::size_t n) {
    std::vector<Mat<T>> out;
    out.reserve(cols.cols());
    for (std::size_t c = 0; c < cols.cols(); ++c) out.push_back(unvec_column(cols, c, n, n));
    return out;
}

namespace detail {

template <Scalar T>
Mat<T> range_of_algebra(const GeneratorSet<T>& gs, const AlgebraOptions& opts) {
    if constexpr (uses_p_method<T>) {
        const auto p = generating_matrix(gs, opts);
        return range_basis(p.P, opts.rank_tol);
    } else {
        const auto wb = word_span(gs, OracleOptions{opts.degree_cap});
        if (!wb.saturated) throw Error("word span did not saturate within degree " + std::to_string(wb.degree_reached));
        return vectorized_basis(wb, gs.n, gs.kind);
    }
}

}  // namespace detail

/// Basis of the algebra as n x n matrices (devectorized range of P).
template <Scalar T>
AlgebraBasis<T> basis(const GeneratorSet<T>& gs, const AlgebraOptions& opts = {}) {
    const Mat<T> cols = detail::range_of_algebra(gs, opts);
    return {cols.cols(), devectorize_columns(cols, gs.n), uses_p_method<T> ? BasisSource::PMethod : BasisSource::Oracle};
}

/// Intersection of two algebras of the same side, kind and unital flag.
template <Scalar T>
AlgebraBasis<T> intersect(const GeneratorSet<T>& a, const GeneratorSet<T>& b, const AlgebraOptions& opts = {}) {
    if (a.n != b.n) throw ShapeMismatch("intersect of algebras of side " + std::to_string(a.n) + " and " + std::to_string(b.n));
    if (!(a.kind == b.kind)) throw KindMismatch("intersect of " + a.kind.name() + " and " + b.kind.name() + " algebras");
    if (a.unital != b.unital) throw InvalidArgument("intersect needs both algebras unital or both non-unital");
    const Mat<T> ra = detail::range_of_algebra(a, opts);
    const Mat<T> rb = detail::range_of_algebra(b, opts);
    const Mat<T> cols = subspace_intersect(ra, rb);
    return {cols.cols(), devectorize_columns(cols, a.n), uses_p_method<T> ? BasisSource::PMethod : BasisSource::Oracle};
}

}  // namespace algebragen
