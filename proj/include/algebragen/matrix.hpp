/**
 * @file matrix.hpp
 * @brief Dense row-major matrix over one scalar backend.
 */
#pragma once

#include <algebragen/errors.hpp>
#include <algebragen/scalar.hpp>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace algebragen {

template <Scalar T>
class Mat {
public:
    using value_type = T;
    using traits = ScalarTraits<T>;

    Mat() : kind_(traits::default_kind()) {}

    /// Zero matrix. For GF(p) the kind must carry the modulus.
    Mat(std::size_t rows, std::size_t cols, ScalarKind kind = traits::default_kind())
        : rows_(rows), cols_(cols), kind_(kind) {
        if (kind.tag == ScalarTag::PrimeField && kind.modulus == 0 && rows * cols != 0) {
            throw InvalidArgument("GF(p) matrix constructed without a modulus");
        }
        data_.assign(rows * cols, traits::zero(kind));
    }

    Mat(std::initializer_list<std::initializer_list<T>> grid, ScalarKind kind = traits::default_kind())
        : rows_(grid.size()), cols_(grid.size() == 0 ? 0 : grid.begin()->size()), kind_(kind) {
        data_.reserve(rows_ * cols_);
        for (const auto& row : grid) {
            if (row.size() != cols_) throw ShapeMismatch("ragged initializer list");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Mat identity(std::size_t n, ScalarKind kind = traits::default_kind()) {
        Mat m(n, n, kind);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = traits::one(kind);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool square() const { return rows_ == cols_; }
    const ScalarKind& kind() const { return kind_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> data() { return data_; }
    std::span<const T> data() const { return data_; }

    T zero() const { return traits::zero(kind_); }
    T one() const { return traits::one(kind_); }

    Mat& operator+=(const Mat& o) {
        check_same(o, "+");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_same(o, "-");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Mat& operator*=(const T& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }
    Mat& operator/=(const T& s) {
        for (auto& x : data_) x /= s;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, const T& s) { return a *= s; }
    friend Mat operator*(const T& s, Mat a) { return a *= s; }
    friend Mat operator/(Mat a, const T& s) { return a /= s; }
    Mat operator-() const {
        Mat r = *this;
        for (auto& x : r.data_) x = -x;
        return r;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) {
            throw ShapeMismatch("product of " + a.shape_string() + " and " + b.shape_string());
        }
        a.check_kind(b);
        Mat r(a.rows_, b.cols_, a.kind_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (traits::is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        }
        return r;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.kind_ == b.kind_ && a.data_ == b.data_;
    }

    Mat transpose() const {
        Mat r(cols_, rows_, kind_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    /// Entrywise conjugate; identity on real and exact kinds.
    Mat conj() const {
        Mat r = *this;
        for (auto& x : r.data_) x = traits::conj(x);
        return r;
    }

    Mat adjoint() const { return conj().transpose(); }

    Mat column(std::size_t j) const {
        Mat r(rows_, 1, kind_);
        for (std::size_t i = 0; i < rows_; ++i) r(i, 0) = (*this)(i, j);
        return r;
    }

    /// Columns listed in `idx`, in that order.
    Mat columns(std::span<const std::size_t> idx) const {
        Mat r(rows_, idx.size(), kind_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t c = 0; c < idx.size(); ++c) r(i, c) = (*this)(i, idx[c]);
        return r;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!traits::is_zero(x)) return false;
        return true;
    }

    std::string shape_string() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    void check_kind(const Mat& o) const {
        if (!(kind_ == o.kind_)) throw KindMismatch("scalar kinds " + kind_.name() + " and " + o.kind_.name());
    }

private:
    void check_same(const Mat& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw ShapeMismatch(std::string("operator") + op + " on " + shape_string() + " and " + o.shape_string());
        }
        check_kind(o);
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    ScalarKind kind_;
    std::vector<T> data_;
};

/// [A | B]
template <Scalar T>
Mat<T> hcat(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows()) throw ShapeMismatch("hcat of " + a.shape_string() + " and " + b.shape_string());
    a.check_kind(b);
    Mat<T> r(a.rows(), a.cols() + b.cols(), a.kind());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

/// Square power by repeated squaring; `power(A, 0)` is the identity.
template <Scalar T>
Mat<T> power(Mat<T> base, std::uint64_t e) {
    if (!base.square()) throw ShapeMismatch("power of non-square " + base.shape_string());
    Mat<T> acc = Mat<T>::identity(base.rows(), base.kind());
    while (e != 0) {
        if (e & 1U) acc = acc * base;
        e >>= 1U;
        if (e != 0) base = base * base;
    }
    return acc;
}

/// Converts entrywise from rationals (exact for Rational, rounded for floats, reduced for GF(p)).
template <Scalar T>
Mat<T> from_rational(const Mat<Rational>& q, ScalarKind kind = ScalarTraits<T>::default_kind()) {
    Mat<T> r(q.rows(), q.cols(), kind);
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) r(i, j) = ScalarTraits<T>::from_rational(q(i, j), kind);
    return r;
}

}  // namespace algebragen
