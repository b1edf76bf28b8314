/**
 * @file oracle.hpp
 * @brief Word-span basis builder: multiply out words breadth-first and keep the ones that enlarge
 * the span. Independent of P, it is the ground truth the generating-matrix method is checked
 * against, the source of membership certificates, and the benchmark baseline.
 */
#pragma once

#include <algebragen/genfun.hpp>
#include <algebragen/linalg.hpp>

#include <optional>
#include <vector>

namespace algebragen {

/// Generator indices, 0-based; the empty word is the identity.
using Word = std::vector<std::size_t>;

/// Incremental span of column vectors. Exact kinds keep echelon rows with unit pivots;
/// approximate kinds keep an orthonormal set and reject vectors whose residual is below
/// rel_tol times their own norm.
template <Scalar T>
class SpanAccumulator {
public:
    SpanAccumulator(std::size_t dim, ScalarKind kind, double rel_tol = 1e-9)
        : dim_(dim), kind_(kind), rel_tol_(rel_tol) {}

    std::size_t size() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }

    /// Residual of v after removing its component in the span.
    std::vector<T> reduce(std::vector<T> v) const {
        using Tr = ScalarTraits<T>;
        if constexpr (Tr::exact) {
            for (std::size_t r = 0; r < rows_.size(); ++r) {
                const T f = v[pivots_[r]];
                if (Tr::is_zero(f)) continue;
                const auto& row = rows_[r];
                for (std::size_t j = 0; j < dim_; ++j)
                    if (!Tr::is_zero(row[j])) v[j] -= f * row[j];
            }
        } else {
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& q : rows_) {
                    T dot{};
                    for (std::size_t j = 0; j < dim_; ++j) dot += Tr::conj(q[j]) * v[j];
                    for (std::size_t j = 0; j < dim_; ++j) v[j] -= dot * q[j];
                }
            }
        }
        return v;
    }

    /// True iff v was outside the span (and has now been added).
    bool insert(const std::vector<T>& v) {
        using Tr = ScalarTraits<T>;
        std::vector<T> r = reduce(v);
        if constexpr (Tr::exact) {
            std::size_t p = 0;
            while (p < dim_ && Tr::is_zero(r[p])) ++p;
            if (p == dim_) return false;
            const T inv = Tr::one(kind_) / r[p];
            for (auto& x : r) x *= inv;
            rows_.push_back(std::move(r));
            pivots_.push_back(p);
        } else {
            const double nv = norm(v);
            const double nr = norm(r);
            if (nv == 0.0 || nr <= rel_tol_ * nv) return false;
            for (auto& x : r) x /= nr;
            rows_.push_back(std::move(r));
        }
        return true;
    }

    bool contains(const std::vector<T>& v) const {
        const auto r = reduce(v);
        if constexpr (ScalarTraits<T>::exact) {
            for (const auto& x : r)
                if (!ScalarTraits<T>::is_zero(x)) return false;
            return true;
        } else {
            return norm(r) <= rel_tol_ * std::max(norm(v), std::numeric_limits<double>::min());
        }
    }

private:
    static double norm(const std::vector<T>& v) {
        double s = 0.0;
        if constexpr (!ScalarTraits<T>::exact) {
            for (const auto& x : v) s += ScalarTraits<T>::abs_sq(x);
        }
        return std::sqrt(s);
    }

    std::size_t dim_;
    ScalarKind kind_;
    double rel_tol_;
    std::vector<std::vector<T>> rows_;
    std::vector<std::size_t> pivots_;
};

template <Scalar T>
std::vector<T> vec_entries(const Mat<T>& a) {
    const Mat<T> v = vec(a);
    return {v.data().begin(), v.data().end()};
}

template <Scalar T>
struct WordBasis {
    struct Element {
        Word word;
        Mat<T> matrix;
    };
    std::vector<Element> elements;
    std::size_t degree_reached = 0;
    bool saturated = false;

    std::size_t size() const { return elements.size(); }
};

struct OracleOptions {
    std::size_t degree_cap = 0;  ///< 0 means n^2
    double rel_tol = 1e-9;       ///< approximate kinds only
};

/// Product of generators along a word (identity for the empty word).
template <Scalar T>
Mat<T> word_value(const GeneratorSet<T>& gs, const Word& w) {
    Mat<T> m = Mat<T>::identity(gs.n, gs.kind);
    for (auto g : w) m = m * gs.gens.at(g);
    return m;
}

/**
 * Breadth-first word span. Words are extended on the right by one generator, layer by layer,
 * in lexicographic order; only words that enlarged the span are extended further. Stops when a
 * layer adds nothing (saturated) or the degree cap is reached. Saturation is confirmed by a
 * two-sided check that E*X and X*E lie in the span for every basis element E and generator X.
 */
template <Scalar T>
WordBasis<T> word_span(const GeneratorSet<T>& gs, const OracleOptions& opts = {}) {
    gs.validate();
    const std::size_t cap = opts.degree_cap == 0 ? gs.n * gs.n : opts.degree_cap;
    SpanAccumulator<T> acc(gs.n * gs.n, gs.kind, opts.rel_tol);
    WordBasis<T> wb;
    std::vector<std::size_t> frontier;

    auto try_add = [&](Word w, Mat<T> m) {
        if (acc.insert(vec_entries(m))) {
            frontier.push_back(wb.elements.size());
            wb.elements.push_back({std::move(w), std::move(m)});
        }
    };

    if (gs.unital) {
        try_add({}, Mat<T>::identity(gs.n, gs.kind));
        wb.degree_reached = 0;
    } else {
        for (std::size_t g = 0; g < gs.d(); ++g) try_add({g}, gs.gens[g]);
        wb.degree_reached = 1;
    }

    while (!frontier.empty() && wb.degree_reached < cap) {
        const std::vector<std::size_t> layer = std::move(frontier);
        frontier.clear();
        for (auto idx : layer) {
            for (std::size_t g = 0; g < gs.d(); ++g) {
                Word w = wb.elements[idx].word;
                w.push_back(g);
                try_add(std::move(w), wb.elements[idx].matrix * gs.gens[g]);
            }
        }
        ++wb.degree_reached;
    }

    bool stable = true;
    for (auto idx : frontier) {
        for (std::size_t g = 0; g < gs.d() && stable; ++g) {
            if (!acc.contains(vec_entries(Mat<T>(wb.elements[idx].matrix * gs.gens[g])))) stable = false;
        }
    }
    if (stable) {
        for (const auto& e : wb.elements) {
            for (const auto& x : gs.gens) {
                if (!acc.contains(vec_entries(Mat<T>(e.matrix * x))) || !acc.contains(vec_entries(Mat<T>(x * e.matrix)))) {
                    stable = false;
                    break;
                }
            }
            if (!stable) break;
        }
    }
    wb.saturated = stable;
    return wb;
}

/// Dimension from a saturated word span. Throws Error if the cap was hit first.
template <Scalar T>
std::size_t oracle_dimension(const GeneratorSet<T>& gs, const OracleOptions& opts = {}) {
    const auto wb = word_span(gs, opts);
    if (!wb.saturated) throw Error("word span did not saturate within degree " + std::to_string(wb.degree_reached));
    return wb.size();
}

template <Scalar T>
struct WordTerm {
    Word word;
    T coeff;
};

template <Scalar T>
using Certificate = std::vector<WordTerm<T>>;

/// sum_k coeff_k * word_k
template <Scalar T>
Mat<T> evaluate(const GeneratorSet<T>& gs, const Certificate<T>& cert) {
    Mat<T> acc(gs.n, gs.n, gs.kind);
    for (const auto& t : cert) acc += word_value(gs, t.word) * t.coeff;
    return acc;
}

/// Columns vec(E_k) of the basis words.
template <Scalar T>
Mat<T> vectorized_basis(const WordBasis<T>& wb, std::size_t n, ScalarKind kind) {
    Mat<T> m(n * n, wb.size(), kind);
    for (std::size_t c = 0; c < wb.size(); ++c) {
        const auto v = vec_entries(wb.elements[c].matrix);
        for (std::size_t r = 0; r < v.size(); ++r) m(r, c) = v[r];
    }
    return m;
}

/**
 * Coefficients over the basis words reconstructing Z, or nullopt when Z is outside the span.
 * Approximate kinds accept a least-squares fit with residual <= tol * max(1, ||vec Z||).
 * Throws InvalidArgument if the word basis is not saturated.
 */
template <Scalar T>
std::optional<Certificate<T>> express(const WordBasis<T>& wb, const GeneratorSet<T>& gs, const Mat<T>& z,
                                      double tol = kDefaultMemberTol) {
    if (!wb.saturated) throw InvalidArgument("express needs a saturated word basis");
    if (z.rows() != gs.n || z.cols() != gs.n) throw ShapeMismatch("candidate " + z.shape_string() + " for side " + std::to_string(gs.n));
    const Mat<T> basis = vectorized_basis(wb, gs.n, gs.kind);
    const Mat<T> target = vec(z);
    Mat<T> coeffs;
    if constexpr (ScalarTraits<T>::exact) {
        auto x = exact_solve(basis, target);
        if (!x) return std::nullopt;
        coeffs = std::move(*x);
    } else {
        auto [x, res] = numeric::least_squares(basis, target);
        if (res > tol * std::max(1.0, numeric::norm2(target))) return std::nullopt;
        coeffs = std::move(x);
    }
    Certificate<T> cert;
    for (std::size_t k = 0; k < wb.size(); ++k) {
        if (ScalarTraits<T>::is_zero(coeffs(k, 0))) continue;
        cert.push_back({wb.elements[k].word, coeffs(k, 0)});
    }
    return cert;
}

}  // namespace algebragen
