#pragma once

// Small deterministic RNG used wherever sampling must be reproducible and
// independent of thread count: each logical stream (seed, index) is hashed
// to its own generator state, so trial k always sees the same draws no
// matter which thread evaluates it.

#include <cstdint>

namespace gcf::rng {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() { return splitmix64_next(state); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }
};

// Derive a stream key for (seed, index) pairs.
inline std::uint64_t stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
    return splitmix64_next(s);
}

}  // namespace gcf::rng
