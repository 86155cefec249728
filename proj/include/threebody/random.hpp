#pragma once

// Counter-based seeding: every (point, realization) pair gets its own
// generator, so results do not depend on scheduling.

#include <cstdint>
#include <random>

namespace threebody {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point, std::uint64_t realization) {
    return splitmix64(splitmix64(splitmix64(master) ^ point) ^ realization);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t master, std::uint64_t point, std::uint64_t realization) {
    return Rng(derive_seed(master, point, realization));
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double u01(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng &rng, double lo, double hi) { return lo + (hi - lo) * u01(rng); }

} // namespace threebody
