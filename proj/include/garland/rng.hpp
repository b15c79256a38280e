#pragma once

#include <cstdint>
#include <vector>

namespace garland {

// SplitMix64 (Steele, Lea, Flood). The mixing function is stateless, so a
// stream is fully determined by its seed and position; outputs are identical
// across platforms and thread schedules.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw from [0, n) via rejection.
    uint64_t next_below(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    uint64_t state_;
};

// Derived stream seed: hash of (seed, index) through one SplitMix64 hop.
// Used for per-trial and per-attempt substreams.
inline uint64_t derive_seed(uint64_t seed, uint64_t index) {
    SplitMix64 g(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    g.next();
    return g.next();
}

// Fisher-Yates shuffle of 0..n-1 driven by the given stream.
inline std::vector<uint32_t> random_permutation(uint32_t n, SplitMix64& g) {
    std::vector<uint32_t> perm(n);
    for (uint32_t i = 0; i < n; ++i) perm[i] = i;
    for (uint32_t i = n; i > 1; --i) {
        const uint64_t j = g.next_below(i);
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

} // namespace garland
