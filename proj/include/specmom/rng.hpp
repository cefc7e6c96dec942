// Counter-based random streams: every variate is a pure function of
// (seed, trial, class_id, counter), so matrix fills are reproducible in any
// order and trials can run in parallel without shared state.

#pragma once

#include <cstdint>

namespace specmom::rng {

// splitmix64 finalizer; full-avalanche 64-bit mix.
inline std::uint64_t avalanche(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

inline std::uint64_t absorb(std::uint64_t h, std::uint64_t v) {
    return avalanche(h ^ (v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2)));
}

struct Stream {
    std::uint64_t key = 0;
};

inline Stream entry_stream(std::uint64_t seed, std::uint64_t trial, std::uint64_t class_id) {
    std::uint64_t h = avalanche(seed + 0x9E3779B97F4A7C15ull);
    h = absorb(h, trial);
    h = absorb(h, class_id);
    return Stream{h};
}

inline std::uint64_t bits(Stream s, std::uint64_t counter) { return absorb(s.key, counter); }

// Uniform on (0, 1]; 53-bit resolution, never exactly zero.
inline double uniform01(Stream s, std::uint64_t counter) {
    return static_cast<double>((bits(s, counter) >> 11) + 1) * 0x1.0p-53;
}

}  // namespace specmom::rng
