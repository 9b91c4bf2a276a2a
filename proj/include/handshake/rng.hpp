#pragma once

#include <cstdint>

namespace handshake::rng {

// Weyl increment from the SplitMix64 generator (Steele, Lea & Flood 2014).
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 output function: a full-avalanche 64-bit mixer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic splittable random stream keyed by (master seed, stream index).
///
/// Stream states are derived through the SplitMix64 avalanche, so distinct
/// indices give decorrelated sequences and a run can hand stream i to trial i
/// regardless of execution order or worker count.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : state_(mix64(master_seed + kGolden * (stream_index + 1))) {}

    explicit RandomStream(std::uint64_t seed) : RandomStream(seed, 0) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

}  // namespace handshake::rng
