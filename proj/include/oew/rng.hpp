#pragma once

#include <cstdint>

namespace oew {

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937 because the
/// whole generator is a dozen lines whose output is pinned here, so seeded
/// runs reproduce byte-for-byte on any platform.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, bound) via 128-bit multiply-shift. Bias is at most
    /// bound/2^64, irrelevant for test-fixture use.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

private:
    std::uint64_t state_;
};

/// Deterministic seed derivation: one SplitMix64 step of seed XOR salt.
/// Chaining mix_seed calls gives independent streams per (side, trial, use).
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept {
    return SplitMix64(seed ^ (salt + 0x9E3779B97F4A7C15ull)).next();
}

}  // namespace oew
