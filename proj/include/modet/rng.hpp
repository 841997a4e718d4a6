#pragma once

#include <cstdint>

namespace modet::detail {

// Counter-based splitmix64; one independent stream per (seed, stream).
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0) {
        state = seed ^ (stream * 0x9e3779b97f4a7c15ULL + 0xbf58476d1ce4e5b9ULL);
    }

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

}  // namespace modet::detail
