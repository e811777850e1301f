#pragma once

// Counter-based random numbers: a stateless splitmix64-style hash of
// (seed, counter). Reproducible from any index without shared state, which
// is what the randomized QMC shifts and the stability-sweep draws need.

#include <cstdint>

namespace slater::rng {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t counter) {
    return mix64(seed + 0x9E3779B97F4A7C15ull * (counter + 1));
}

// Uniform in [0, 1) with 53-bit resolution.
inline double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(counter_bits(seed, counter) >> 11) * 0x1.0p-53;
}

// Uniform in [lo, hi).
inline double counter_uniform(std::uint64_t seed, std::uint64_t counter, double lo, double hi) {
    return lo + (hi - lo) * counter_uniform(seed, counter);
}

}  // namespace slater::rng
