#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "garland/rng.hpp"

namespace garland {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.template convert_to<double>(); }

// Small reduced fraction for thresholds and report fields that must stay
// exact and printable.
struct Fraction {
    long long num = 0;
    long long den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
    bool operator==(const Fraction&) const = default;
};

// --- arithmetic mod a 62-bit prime (probabilistic rank mode) ---

inline uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t pow_mod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

inline uint64_t inv_mod(uint64_t a, uint64_t p) { return pow_mod(a, p - 2, p); }

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = pow_mod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Seeded random prime in [2^61, 2^62).
inline uint64_t random_prime62(uint64_t seed) {
    SplitMix64 g(seed);
    for (;;) {
        uint64_t c = (g.next() >> 2) | (1ULL << 61) | 1ULL;
        if (is_prime_u64(c)) return c;
    }
}

// Rank computation mode: exact rational, or modulo a random prime.
struct RankMode {
    bool modular = false;
    uint64_t prime = 0;

    static RankMode exact() { return {}; }
    static RankMode modular_with_seed(uint64_t seed) { return {true, random_prime62(seed)}; }
};

inline uint64_t residue_mod(const BigInt& v, uint64_t p) {
    BigInt r = v % BigInt(p);
    if (r < 0) r += p;
    return r.template convert_to<uint64_t>();
}

inline uint64_t residue_mod(const Rational& v, uint64_t p) {
    const uint64_t n = residue_mod(numerator(v), p);
    const uint64_t d = residue_mod(denominator(v), p);
    return mul_mod(n, inv_mod(d, p), p);
}

} // namespace garland
