#pragma once

#include <cstdint>

#include "oew/rng.hpp"
#include "oew/types.hpp"

namespace oew {

// Deterministic synthetic inputs for the CLI generator, the benchmark, and
// the test suites. Noise consumes one SplitMix64 draw per 8 pixels (least
// significant byte first); bits consume those bytes MSB-first.

inline GrayImage noise_image(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    GrayImage image(rows, cols);
    SplitMix64 rng(seed);
    std::uint8_t* data = image.data();
    const std::int64_t n = image.size();
    for (std::int64_t i = 0; i < n; i += 8) {
        std::uint64_t word = rng.next();
        for (std::int64_t k = 0; k < 8 && i + k < n; ++k) {
            data[i + k] = static_cast<std::uint8_t>(word & 0xFFu);
            word >>= 8;
        }
    }
    return image;
}

inline GrayImage gradient_image(Eigen::Index rows, Eigen::Index cols) {
    GrayImage image(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j)
            image(i, j) = static_cast<std::uint8_t>((i + j) % 256);
    return image;
}

inline GrayImage constant_image(Eigen::Index rows, Eigen::Index cols, std::uint8_t value = 128) {
    return GrayImage::Constant(rows, cols, value);
}

inline BitMatrix random_bits(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    BitMatrix bits(rows, cols);
    SplitMix64 rng(seed);
    bool* data = bits.data();
    const std::int64_t n = bits.size();
    std::uint64_t word = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        if (i % 64 == 0) word = rng.next();
        const std::int64_t k = i % 64;
        const std::uint8_t byte = static_cast<std::uint8_t>((word >> ((k / 8) * 8)) & 0xFFu);
        data[i] = (byte >> (7 - k % 8)) & 1u;
    }
    return bits;
}

}  // namespace oew
