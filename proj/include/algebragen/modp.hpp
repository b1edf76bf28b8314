/**
 * @file modp.hpp
 * @brief Randomized exact dimension for integer generators, computed modulo random primes.
 *
 * For integer X_i and B = ceil(sum ||X_i||_F^2) + 1, the matrix psi((B I - S)^-1) has the same
 * rank as P. Reducing it modulo a prime p gives the right rank except for a bounded number of bad
 * primes, and a bad prime can only lower the rank. Primes for which B I - S is singular are
 * detected and skipped.
 */
#pragma once

#include <algebragen/genfun.hpp>
#include <algebragen/linalg.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <thread>
#include <vector>

namespace algebragen {

struct PrimeOutcome {
    std::uint64_t prime = 0;
    bool singular_skip = false;  ///< B I - S singular mod p
    std::size_t rank = 0;        ///< meaningful when !singular_skip
};

struct PrimePlan {
    Integer B = 1;
    double bad_prime_bound = 0.0;
    std::uint64_t ceiling_N = 0;
    std::vector<PrimeOutcome> primes_tried;
    double per_prime_failure = 1.0;          ///< bad_prime_bound * ln N / N, capped at 1
    double failure_probability_bound = 1.0;  ///< per_prime_failure ^ (successful primes)
};

namespace detail {

inline void require_integer_entries(const GeneratorSet<Rational>& gs) {
    for (const auto& g : gs.gens)
        for (const auto& x : g.data())
            if (x.get_den() != 1) throw InvalidArgument("mod-p path needs integer generators (found " + x.get_str() + ")");
}

inline double log_integer(const Integer& v) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31U);
}

}  // namespace detail

/// B = sum ||X_i||_F^2 + 1 for integer generators.
inline Integer compute_B(const GeneratorSet<Rational>& gs) {
    detail::require_integer_entries(gs);
    return scale_bound(gs);
}

/// n^2 (n^2 + 1) ln B + n (n^2 + 1) + n^2 ln n.
inline double bad_prime_bound(std::size_t n, const Integer& B) {
    if (n == 0 || B < 1) throw InvalidArgument("bad_prime_bound needs n >= 1 and B >= 1");
    const double nd = static_cast<double>(n);
    const double n2 = nd * nd;
    return n2 * (n2 + 1.0) * detail::log_integer(B) + nd * (n2 + 1.0) + n2 * std::log(nd);
}

/// N = max(2^20, ceil(100 b ln(100 b))). Throws OutOfRange beyond the deterministic primality range.
inline std::uint64_t prime_ceiling(double bound) {
    constexpr double kFloor = 1048576.0;
    const double scaled = 100.0 * std::max(bound, 1.0);
    const double n = std::max(kFloor, std::ceil(scaled * std::log(scaled)));
    if (!(n <= static_cast<double>(kSmallWitnessLimit))) {
        throw OutOfRange("prime ceiling " + std::to_string(n) +
                         " exceeds the deterministic Miller-Rabin range; use the exact rational path");
    }
    return static_cast<std::uint64_t>(n);
}

/// Uniform random prime in [N/2, N] by rejection over odd candidates.
inline std::uint64_t sample_prime_below(std::uint64_t ceiling, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(ceiling / 2, ceiling);
    for (;;) {
        const std::uint64_t c = dist(rng) | 1U;
        if (c <= ceiling && is_prime_small(c)) return c;
    }
}

/// Reproducible: the same (bound, seed) always yields the same prime.
inline std::uint64_t sample_prime(double bound, std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U)};
    std::mt19937_64 rng(seq);
    return sample_prime_below(prime_ceiling(bound), rng);
}

/// Rank of psi((B I - S)^-1) mod p (or psi(S (B I - S)^-1) for non-unital sets).
inline PrimeOutcome dimension_mod_p(const GeneratorSet<Rational>& gs, std::uint64_t p) {
    detail::require_integer_entries(gs);
    const ScalarKind kind = ScalarKind::prime_field(p);
    const Integer B = scale_bound(gs);
    std::vector<Mat<Zp>> gens;
    gens.reserve(gs.d());
    for (const auto& g : gs.gens) gens.push_back(from_rational<Zp>(g, kind));
    const GeneratorSet<Zp> reduced(gs.n, std::move(gens), gs.unital, kind);

    const Mat<Zp> s = sum_kron(reduced, false);
    const Mat<Zp> m = Mat<Zp>::identity(gs.n * gs.n, kind) * Zp::from_integer(B, p) - s;
    PrimeOutcome out;
    out.prime = p;
    Mat<Zp> minv;
    try {
        minv = inverse(m);
    } catch (const SingularMatrix&) {
        out.singular_skip = true;
        return out;
    }
    const Mat<Zp> core = gs.unital ? minv : Mat<Zp>(s * minv);
    out.rank = elimination_rank(psi(core, BlockShape::square(gs.n)));
    return out;
}

struct CertifyOptions {
    std::size_t threads = 1;
    std::optional<std::uint64_t> first_prime;  ///< forced prime for the first attempt of trial 0
    std::size_t max_attempts = 1000;           ///< per trial, before giving up on singular primes
};

struct CertifiedDimension {
    std::size_t dim = 0;
    PrimePlan plan;
};

/**
 * Draws primes until `trials` of them give a non-singular B I - S and returns the maximum rank.
 * Trial t, attempt a uses a seed derived from (seed, t, a), so results do not depend on thread
 * count or scheduling.
 */
inline CertifiedDimension certified_dimension(const GeneratorSet<Rational>& gs, std::size_t trials, std::uint64_t seed,
                                              const CertifyOptions& opts = {}) {
    if (trials == 0) throw InvalidArgument("certified_dimension needs at least one trial");
    if (opts.first_prime && !is_prime(*opts.first_prime)) {
        throw InvalidArgument(std::to_string(*opts.first_prime) + " is not prime");
    }
    CertifiedDimension out;
    out.plan.B = compute_B(gs);
    out.plan.bad_prime_bound = bad_prime_bound(gs.n, out.plan.B);
    out.plan.ceiling_N = prime_ceiling(out.plan.bad_prime_bound);

    std::vector<std::vector<PrimeOutcome>> per_trial(trials);
    std::vector<std::exception_ptr> errors(trials);
    auto run_trial = [&](std::size_t t) {
        try {
            for (std::size_t a = 0; a < opts.max_attempts; ++a) {
                std::uint64_t p = 0;
                if (t == 0 && a == 0 && opts.first_prime) {
                    p = *opts.first_prime;
                } else {
                    const std::uint64_t s = detail::splitmix64(seed ^ detail::splitmix64((t << 32U) + a));
                    std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32U)};
                    std::mt19937_64 rng(seq);
                    p = sample_prime_below(out.plan.ceiling_N, rng);
                }
                per_trial[t].push_back(dimension_mod_p(gs, p));
                if (!per_trial[t].back().singular_skip) return;
            }
            throw Error("no non-singular prime found in " + std::to_string(opts.max_attempts) + " attempts");
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(opts.threads, trials));
    if (workers == 1) {
        for (std::size_t t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t t = w; t < trials; t += workers) run_trial(t);
            });
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    for (auto& outcomes : per_trial) {
        for (auto& o : outcomes) {
            if (!o.singular_skip) out.dim = std::max(out.dim, o.rank);
            out.plan.primes_tried.push_back(o);
        }
    }
    const double n_ceiling = static_cast<double>(out.plan.ceiling_N);
    out.plan.per_prime_failure = std::min(1.0, out.plan.bad_prime_bound * std::log(n_ceiling) / n_ceiling);
    out.plan.failure_probability_bound = std::pow(out.plan.per_prime_failure, static_cast<double>(trials));
    return out;
}

/// Multiplies each generator by the lcm of its entry denominators. Per-generator scaling
/// leaves the generated algebra unchanged.
inline GeneratorSet<Rational> clear_denominators(const GeneratorSet<Rational>& gs) {
    GeneratorSet<Rational> out = gs;
    for (auto& g : out.gens) {
        Integer l = 1;
        for (const auto& x : g.data()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        g *= Rational(l);
    }
    return out;
}

}  // namespace algebragen
