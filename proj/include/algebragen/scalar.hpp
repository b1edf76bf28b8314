/**
 * @file scalar.hpp
 * @brief Scalar backends and the traits that let the matrix code treat them uniformly.
 *
 * Four backends are supported:
 *
 * - `double` (ApproxReal)
 * - `std::complex<double>` (ApproxComplex)
 * - `Rational`, a GMP rational kept in lowest terms (ExactRational)
 * - `Zp`, an element of GF(p) for a runtime prime p (PrimeField)
 *
 * Mixing backends is a compile-time error. Mixing two prime fields with different moduli
 * is detected at runtime and raises KindMismatch.
 */
#pragma once

#include <algebragen/errors.hpp>
#include <algebragen/primes.hpp>

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>

namespace algebragen {

using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

enum class ScalarTag { ApproxReal, ApproxComplex, ExactRational, PrimeField };

/// Runtime description of a backend. `modulus` is meaningful only for PrimeField.
struct ScalarKind {
    ScalarTag tag = ScalarTag::ApproxReal;
    std::uint64_t modulus = 0;

    static ScalarKind approx_real() { return {ScalarTag::ApproxReal, 0}; }
    static ScalarKind approx_complex() { return {ScalarTag::ApproxComplex, 0}; }
    static ScalarKind exact_rational() { return {ScalarTag::ExactRational, 0}; }

    /// Throws InvalidArgument unless `p` is prime and below 2^63.
    static ScalarKind prime_field(std::uint64_t p) {
        if (p >= (std::uint64_t{1} << 63) || !is_prime(p)) {
            throw InvalidArgument("prime field modulus " + std::to_string(p) + " is not a prime below 2^63");
        }
        return {ScalarTag::PrimeField, p};
    }

    bool exact() const { return tag == ScalarTag::ExactRational || tag == ScalarTag::PrimeField; }

    friend bool operator==(const ScalarKind&, const ScalarKind&) = default;

    std::string name() const {
        switch (tag) {
            case ScalarTag::ApproxReal: return "f64";
            case ScalarTag::ApproxComplex: return "c64";
            case ScalarTag::ExactRational: return "rational";
            case ScalarTag::PrimeField: return "gfp:" + std::to_string(modulus);
        }
        return "?";
    }
};

/// Element of GF(p). The modulus travels with the value.
class Zp {
public:
    Zp() = default;
    /// `p` must be below 2^63.
    Zp(std::int64_t v, std::uint64_t p) : p_(p) {
        std::int64_t r = v % static_cast<std::int64_t>(p);
        if (r < 0) r += static_cast<std::int64_t>(p);
        v_ = static_cast<std::uint64_t>(r);
    }
    static Zp from_raw(std::uint64_t v, std::uint64_t p) {
        Zp z;
        z.v_ = p == 0 ? 0 : v % p;
        z.p_ = p;
        return z;
    }
    static Zp from_integer(const Integer& v, std::uint64_t p) {
        static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
        return from_raw(mpz_fdiv_ui(v.get_mpz_t(), p), p);
    }

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }

    Zp& operator+=(const Zp& o) {
        check(o);
        v_ += o.v_;
        if (v_ >= p_) v_ -= p_;
        return *this;
    }
    Zp& operator-=(const Zp& o) {
        check(o);
        v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
        return *this;
    }
    Zp& operator*=(const Zp& o) {
        check(o);
        v_ = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v_) * o.v_ % p_);
        return *this;
    }
    Zp& operator/=(const Zp& o) { return *this *= o.inverse(); }

    friend Zp operator+(Zp a, const Zp& b) { return a += b; }
    friend Zp operator-(Zp a, const Zp& b) { return a -= b; }
    friend Zp operator*(Zp a, const Zp& b) { return a *= b; }
    friend Zp operator/(Zp a, const Zp& b) { return a /= b; }
    Zp operator-() const { return from_raw(v_ == 0 ? 0 : p_ - v_, p_); }

    friend bool operator==(const Zp& a, const Zp& b) { return a.v_ == b.v_ && a.p_ == b.p_; }

    Zp pow(std::uint64_t e) const {
        Zp base = *this;
        Zp acc = from_raw(1, p_);
        while (e != 0) {
            if (e & 1U) acc *= base;
            base *= base;
            e >>= 1U;
        }
        return acc;
    }
    /// Throws SingularMatrix on zero.
    Zp inverse() const {
        if (v_ == 0) throw SingularMatrix("division by zero in GF(" + std::to_string(p_) + ")");
        return pow(p_ - 2);
    }

private:
    void check(const Zp& o) const {
        if (p_ != o.p_) throw KindMismatch("GF(p) elements with different moduli");
    }

    std::uint64_t v_ = 0;
    std::uint64_t p_ = 0;
};

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr bool has_norm = true;
    using Magnitude = double;
    static ScalarKind default_kind() { return ScalarKind::approx_real(); }
    static double zero(const ScalarKind&) { return 0.0; }
    static double one(const ScalarKind&) { return 1.0; }
    static double from_int(long long v, const ScalarKind&) { return static_cast<double>(v); }
    static double from_rational(const Rational& q, const ScalarKind&) { return q.get_d(); }
    static bool is_zero(double x) { return x == 0.0; }
    static double conj(double x) { return x; }
    static double abs(double x) { return std::abs(x); }
    static double abs_sq(double x) { return x * x; }
    static double pivot_weight(double x) { return std::abs(x); }
    static std::string to_string(double x) {
        std::ostringstream os;
        os.precision(17);
        os << x;
        return os.str();
    }
};

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static constexpr bool has_norm = true;
    using Magnitude = double;
    static ScalarKind default_kind() { return ScalarKind::approx_complex(); }
    static Complex zero(const ScalarKind&) { return {0.0, 0.0}; }
    static Complex one(const ScalarKind&) { return {1.0, 0.0}; }
    static Complex from_int(long long v, const ScalarKind&) { return {static_cast<double>(v), 0.0}; }
    static Complex from_rational(const Rational& q, const ScalarKind&) { return {q.get_d(), 0.0}; }
    static bool is_zero(const Complex& x) { return x == Complex{}; }
    static Complex conj(const Complex& x) { return std::conj(x); }
    static double abs(const Complex& x) { return std::abs(x); }
    static double abs_sq(const Complex& x) { return std::norm(x); }
    static double pivot_weight(const Complex& x) { return std::abs(x); }
    static std::string to_string(const Complex& x) {
        std::ostringstream os;
        os.precision(17);
        os << x.real() << (x.imag() < 0 || std::signbit(x.imag()) ? "-" : "+") << std::abs(x.imag()) << "i";
        return os.str();
    }
};

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr bool has_norm = true;
    using Magnitude = Rational;
    static ScalarKind default_kind() { return ScalarKind::exact_rational(); }
    static Rational zero(const ScalarKind&) { return Rational(0); }
    static Rational one(const ScalarKind&) { return Rational(1); }
    static Rational from_int(long long v, const ScalarKind&) { return Rational(Integer(std::to_string(v))); }
    static Rational from_rational(const Rational& q, const ScalarKind&) { return q; }
    static bool is_zero(const Rational& x) { return sgn(x) == 0; }
    static Rational conj(const Rational& x) { return x; }
    static Rational abs(const Rational& x) { return ::abs(x); }
    static Rational abs_sq(const Rational& x) { return x * x; }
    /// Smaller is better: exact pivots are chosen to limit coefficient growth.
    static std::size_t pivot_weight(const Rational& x) {
        return mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
    }
    static std::string to_string(const Rational& x) { return x.get_str(); }
};

template <>
struct ScalarTraits<Zp> {
    static constexpr bool exact = true;
    static constexpr bool has_norm = false;
    static ScalarKind default_kind() { return {ScalarTag::PrimeField, 0}; }
    static Zp zero(const ScalarKind& k) { return Zp::from_raw(0, k.modulus); }
    static Zp one(const ScalarKind& k) { return Zp::from_raw(1, k.modulus); }
    static Zp from_int(long long v, const ScalarKind& k) { return Zp(v, k.modulus); }
    /// Throws SingularMatrix when the denominator vanishes mod p.
    static Zp from_rational(const Rational& q, const ScalarKind& k) {
        return Zp::from_integer(q.get_num(), k.modulus) / Zp::from_integer(q.get_den(), k.modulus);
    }
    static bool is_zero(const Zp& x) { return x.value() == 0; }
    static Zp conj(const Zp& x) { return x; }
    static std::size_t pivot_weight(const Zp&) { return 0; }
    static std::string to_string(const Zp& x) { return std::to_string(x.value()); }
};

template <class T>
concept Scalar = requires { typename ScalarTraits<T>; ScalarTraits<T>::exact; };

template <class T>
concept ExactScalar = Scalar<T> && ScalarTraits<T>::exact;

template <class T>
concept ApproxScalar = Scalar<T> && !ScalarTraits<T>::exact;

/// Backends with a norm (everything except GF(p)).
template <class T>
concept NormedScalar = Scalar<T> && ScalarTraits<T>::has_norm;

template <NormedScalar T>
using magnitude_t = typename ScalarTraits<T>::Magnitude;

inline Integer ceil_to_integer(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer ceil_to_integer(double x) {
    Integer r;
    mpz_set_d(r.get_mpz_t(), std::ceil(x));
    return r;
}

/// Exact rational value of a finite double.
inline Rational rational_from_double(double x) {
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

}  // namespace algebragen
