#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace qte {

using Rng = std::mt19937_64;

// Uniform double in [0, 1). Hand-rolled from the raw 64-bit stream so that
// seeded results do not depend on the standard library's distribution
// implementation.
inline double uniform_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_double(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_double(rng);
}

// +1 or -1 with equal probability.
inline double rademacher(Rng& rng) {
    return (rng() & 1ULL) ? 1.0 : -1.0;
}

// Uniform integer in [0, n). Modulo bias is negligible for n << 2^64.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    return rng() % n;
}

// Fisher-Yates shuffle driven by the raw stream (std::shuffle is
// implementation-defined).
template <typename T>
void shuffle_in_place(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_index(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace qte
