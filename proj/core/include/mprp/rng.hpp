#pragma once

#include <cstdint>
#include <cstddef>

namespace mprp {

// All randomness in this project flows through SplitMix64 (Steele, Lea &
// Flood's SplittableRandom finalizer, fixed-increment variant). The generator
// family is part of the reproducibility contract: identical seeds produce
// identical streams on every platform and in every release.
//
// Stream splitting rule: derive_seed(seed, i) equals the (i+1)-th raw output
// of a SplitMix64 stream seeded with `seed`. Consumers that need independent
// substreams (one per site, per restart, per trial) seed a fresh SplitMix64
// with derive_seed(parent, index); substreams never share state, so adding
// draws to one substream cannot perturb any other.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += kGolden);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). n must be positive. Rejection sampling, so
    /// the result is exactly uniform.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

private:
    std::uint64_t state_;
};

/// Deterministic substream derivation; see the splitting rule above.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + (index + 1) * SplitMix64::kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace mprp
