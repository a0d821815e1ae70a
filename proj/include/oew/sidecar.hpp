#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "oew/crc32.hpp"
#include "oew/types.hpp"

namespace oew {

// Sidecar container for the reversibility side information ("OEW1"):
//
//   offset  size  field
//   0       4     magic "OEW1"
//   4       1     version, currently 1
//   5       1     layer count, 1..255
//   6       2     reserved, must be 0
//   8       4     image height, u32 big-endian
//   12      4     image width,  u32 big-endian
//   16      ...   layers in embed order, each:
//                   message rows, message cols   u32 big-endian each
//                   key bits, row-major, MSB-first, zero-padded to
//                     ceil(H*W/8) bytes
//                   magnitude bytes, row-major, H*W bytes
//   end-4   4     CRC-32 (big-endian) over every preceding byte
//
// The CRC is the reflected 0x04C11DB7 polynomial with init/xorout 0xFFFFFFFF
// (the zlib crc32). Any single corrupted payload byte is reported as
// CrcMismatch; recovery must never run from a damaged blueprint.

namespace detail {

inline void put_u32be(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

inline std::uint32_t get_u32be(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

}  // namespace detail

inline constexpr std::size_t kSidecarHeaderSize = 16;
inline constexpr std::uint8_t kSidecarVersion = 1;

inline std::size_t sidecar_size(std::size_t layer_count, std::size_t height, std::size_t width) {
    const std::size_t hw = height * width;
    return kSidecarHeaderSize + layer_count * (8 + (hw + 7) / 8 + hw) + 4;
}

inline std::vector<std::uint8_t> write_sidecar(const LayerStack& stack) {
    if (stack.empty()) raise(Errc::EmptyStack, "cannot encode an empty layer stack");
    if (stack.size() > 255)
        raise(Errc::InconsistentDimensions, "layer count exceeds the 1-byte field");

    const Eigen::Index h = stack.front().blueprint.rows();
    const Eigen::Index w = stack.front().blueprint.cols();
    if (h < 1 || w < 1) raise(Errc::InconsistentDimensions, "blueprint dimensions must be positive");
    for (const Layer& layer : stack) {
        if (layer.blueprint.rows() != h || layer.blueprint.cols() != w ||
            !same_size(layer.blueprint.magnitudes, layer.blueprint.keys))
            raise(Errc::InconsistentDimensions, "layers disagree on blueprint dimensions");
        if (layer.message_rows < 1 || layer.message_cols < 1 || layer.message_rows > h ||
            layer.message_cols > w - 1)
            raise(Errc::InconsistentDimensions, "layer message geometry does not fit the image");
    }

    const std::size_t hw = static_cast<std::size_t>(h) * static_cast<std::size_t>(w);
    std::vector<std::uint8_t> out;
    out.reserve(sidecar_size(stack.size(), h, w));
    out.insert(out.end(), {'O', 'E', 'W', '1'});
    out.push_back(kSidecarVersion);
    out.push_back(static_cast<std::uint8_t>(stack.size()));
    out.push_back(0);
    out.push_back(0);
    detail::put_u32be(out, static_cast<std::uint32_t>(h));
    detail::put_u32be(out, static_cast<std::uint32_t>(w));

    for (const Layer& layer : stack) {
        detail::put_u32be(out, static_cast<std::uint32_t>(layer.message_rows));
        detail::put_u32be(out, static_cast<std::uint32_t>(layer.message_cols));
        const bool* keys = layer.blueprint.keys.data();  // row-major storage
        for (std::size_t byte = 0; byte < (hw + 7) / 8; ++byte) {
            std::uint8_t packed = 0;
            for (std::size_t k = 0; k < 8 && byte * 8 + k < hw; ++k)
                if (keys[byte * 8 + k]) packed |= static_cast<std::uint8_t>(0x80u >> k);
            out.push_back(packed);
        }
        const std::uint8_t* mags = layer.blueprint.magnitudes.data();
        out.insert(out.end(), mags, mags + hw);
    }

    detail::put_u32be(out, crc32(out));
    return out;
}

inline LayerStack read_sidecar(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4) raise(Errc::Truncated, "shorter than the magic number");
    if (bytes[0] != 'O' || bytes[1] != 'E' || bytes[2] != 'W' || bytes[3] != '1')
        raise(Errc::BadMagic, "expected magic OEW1");
    if (bytes.size() < kSidecarHeaderSize) raise(Errc::Truncated, "incomplete fixed header");
    if (bytes[4] != kSidecarVersion)
        raise(Errc::UnsupportedVersion, "version " + std::to_string(bytes[4]));

    const std::size_t layer_count = bytes[5];
    const std::uint32_t height = detail::get_u32be(bytes.data() + 8);
    const std::uint32_t width = detail::get_u32be(bytes.data() + 12);
    if (layer_count == 0) raise(Errc::InconsistentDimensions, "layer count must be >= 1");
    if (height == 0 || width == 0)
        raise(Errc::InconsistentDimensions, "image dimensions must be positive");

    // Each layer carries at least H*W magnitude bytes, so this rules out
    // absurd header dimensions before any size arithmetic can overflow.
    const std::uint64_t hw = std::uint64_t(height) * width;
    if (hw > bytes.size()) raise(Errc::Truncated, "image dimensions exceed the file size");

    const std::size_t expected = sidecar_size(layer_count, height, width);
    if (bytes.size() < expected)
        raise(Errc::Truncated, "file is " + std::to_string(bytes.size()) + " bytes, layout needs " +
                                   std::to_string(expected));
    if (bytes.size() > expected)
        raise(Errc::InconsistentDimensions, std::to_string(bytes.size() - expected) +
                                                " trailing bytes after the layout");

    const std::uint32_t stored_crc = detail::get_u32be(bytes.data() + expected - 4);
    const std::uint32_t actual_crc = crc32(bytes.first(expected - 4));
    if (stored_crc != actual_crc) raise(Errc::CrcMismatch, "sidecar payload is corrupted");

    if (bytes[6] != 0 || bytes[7] != 0)
        raise(Errc::InconsistentDimensions, "reserved bytes must be zero");

    LayerStack stack(layer_count);
    const std::size_t key_bytes = (hw + 7) / 8;
    std::size_t pos = kSidecarHeaderSize;
    for (Layer& layer : stack) {
        const std::uint32_t msg_rows = detail::get_u32be(bytes.data() + pos);
        const std::uint32_t msg_cols = detail::get_u32be(bytes.data() + pos + 4);
        pos += 8;
        if (msg_rows == 0 || msg_cols == 0 || msg_rows > height || msg_cols > width - 1)
            raise(Errc::InconsistentDimensions, "layer message geometry does not fit the image");
        layer.message_rows = msg_rows;
        layer.message_cols = msg_cols;

        layer.blueprint.keys.resize(height, width);
        bool* keys = layer.blueprint.keys.data();
        for (std::uint64_t bit = 0; bit < hw; ++bit)
            keys[bit] = (bytes[pos + bit / 8] >> (7 - bit % 8)) & 1u;
        const std::uint64_t pad_bits = key_bytes * 8 - hw;
        if (pad_bits > 0 && (bytes[pos + key_bytes - 1] & ((1u << pad_bits) - 1u)) != 0)
            raise(Errc::InconsistentDimensions, "key padding bits must be zero");
        pos += key_bytes;

        layer.blueprint.magnitudes =
            Eigen::Map<const ByteMatrix>(bytes.data() + pos, height, width);
        pos += hw;
    }
    return stack;
}

}  // namespace oew
