#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace oew {

// CRC-32 as used by zlib and PNG: polynomial 0x04C11DB7 with reflected input
// and output (table constant 0xEDB88320), init and final XOR 0xFFFFFFFF.
// Check value: crc32 of "123456789" is 0xCBF43926.

namespace detail {

constexpr std::array<std::uint32_t, 256> make_crc32_table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
        table[i] = c;
    }
    return table;
}

inline constexpr std::array<std::uint32_t, 256> kCrc32Table = make_crc32_table();

}  // namespace detail

inline std::uint32_t crc32(std::span<const std::uint8_t> data) {
    std::uint32_t c = 0xFFFFFFFFu;
    for (std::uint8_t byte : data)
        c = detail::kCrc32Table[(c ^ byte) & 0xFFu] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

}  // namespace oew
