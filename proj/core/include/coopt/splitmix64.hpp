#pragma once

#include <cstdint>

namespace coopt {

/// SplitMix64 generator (Vigna's public-domain construction: golden-gamma
/// state increment plus the murmur-style finalizer). Every randomized piece
/// of the toolkit draws from this engine so that a (seed, parameters) pair
/// reproduces bit-identical results anywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1): top 53 bits scaled by 2^-53.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform index in [0, n). Plain modulo; the tiny bias is acceptable for
    /// benchmark instance generation and keeps the draw trivially portable.
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }

private:
    std::uint64_t state_;
};

/// index-th output of the stream seeded with base, computable without
/// advancing a generator: finalize(base + (index+1) * gamma). Used to hand
/// independent sub-streams to restarts and batch entries so they can run in
/// any order (or concurrently) with unchanged results.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace coopt
