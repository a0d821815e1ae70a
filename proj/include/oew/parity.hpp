#pragma once

#include <cstdint>

namespace oew {

// Parity coding: an odd pixel carries a 0, an even pixel carries a 1.

constexpr bool decode_bit(std::uint8_t pixel) noexcept { return (pixel & 1u) == 0; }

/// Adjust a pixel so its parity encodes the given bit. Pixels whose parity
/// already matches are returned unchanged; otherwise the pixel moves by +1,
/// except 255 which must step down to 254. |result - pixel| <= 1 always.
constexpr std::uint8_t embed_bit(std::uint8_t pixel, bool bit) noexcept {
    if (decode_bit(pixel) == bit) return pixel;
    if (pixel == 255) return 254;
    return static_cast<std::uint8_t>(pixel + 1);
}

}  // namespace oew
