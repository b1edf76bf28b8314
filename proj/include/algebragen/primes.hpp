/**
 * @file primes.hpp
 * @brief Deterministic Miller-Rabin for 64-bit integers.
 */
#pragma once

#include <array>
#include <cstdint>

namespace algebragen {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e != 0) {
        if (e & 1U) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1U;
    }
    return r;
}

/// One strong-probable-prime round; `n` odd and > witness.
inline bool strong_probable_prime(std::uint64_t n, std::uint64_t witness) {
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    std::uint64_t x = powmod(witness, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

template <std::size_t N>
bool miller_rabin(std::uint64_t n, const std::array<std::uint64_t, N>& witnesses) {
    if (n < 2) return false;
    for (std::uint64_t q : witnesses) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    for (std::uint64_t a : witnesses) {
        if (!strong_probable_prime(n, a)) return false;
    }
    return true;
}

}  // namespace detail

/// Largest value for which the seven-prime witness set {2,...,17} is a proof of primality
/// (the true threshold is 341550071728321; this keeps a margin).
inline constexpr std::uint64_t kSmallWitnessLimit = 330'000'000'000'000ULL;

/// Witnesses {2,...,17}. Exact below kSmallWitnessLimit.
inline bool is_prime_small(std::uint64_t n) {
    static constexpr std::array<std::uint64_t, 7> w{2, 3, 5, 7, 11, 13, 17};
    return detail::miller_rabin(n, w);
}

/// Exact for every 64-bit input.
inline bool is_prime(std::uint64_t n) {
    static constexpr std::array<std::uint64_t, 12> w{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    return detail::miller_rabin(n, w);
}

}  // namespace algebragen
