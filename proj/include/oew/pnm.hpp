#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "oew/types.hpp"

namespace oew {

// Binary netpbm codecs. Writers emit the canonical form:
//   graymap  "P5\n<width> <height>\n255\n" + H*W raster bytes, row-major
//   bitmap   "P4\n<width> <height>\n"      + rows packed MSB-first, each row
//                                            padded to a byte boundary
// Readers accept arbitrary header whitespace and '#' comments, insist on
// maxval 255 for graymaps, and ignore bytes past the raster.

namespace detail {

inline bool pnm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class HeaderReader {
public:
    explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    void expect_magic(char digit) {
        if (bytes_.size() < 2) raise(Errc::MalformedHeader, "file shorter than a magic number");
        if (bytes_[0] != 'P' || bytes_[1] != static_cast<std::uint8_t>(digit))
            raise(Errc::MalformedHeader, std::string("expected magic P") + digit);
        pos_ = 2;
    }

    std::uint64_t value(const char* what) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || bytes_[pos_] < '0' || bytes_[pos_] > '9')
            raise(Errc::MalformedHeader, std::string("expected a number for ") + what);
        std::uint64_t v = 0;
        while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > 0xFFFFFFFFull) raise(Errc::MalformedHeader, std::string(what) + " out of range");
            ++pos_;
        }
        return v;
    }

    // The header ends with exactly one whitespace byte before the raster.
    std::span<const std::uint8_t> raster() {
        if (pos_ >= bytes_.size() || !pnm_space(bytes_[pos_]))
            raise(Errc::MalformedHeader, "missing whitespace before raster");
        ++pos_;
        return bytes_.subspan(pos_);
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (pnm_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

inline void append_header(std::vector<std::uint8_t>& out, const std::string& text) {
    out.insert(out.end(), text.begin(), text.end());
}

}  // namespace detail

inline std::vector<std::uint8_t> write_graymap(const GrayImage& image) {
    if (image.rows() < 1 || image.cols() < 1)
        raise(Errc::DimensionMismatch, "cannot encode an empty graymap");
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(image.size()) + 32);
    detail::append_header(out, "P5\n" + std::to_string(image.cols()) + " " +
                                   std::to_string(image.rows()) + "\n255\n");
    out.insert(out.end(), image.data(), image.data() + image.size());
    return out;
}

inline GrayImage read_graymap(std::span<const std::uint8_t> bytes) {
    detail::HeaderReader header(bytes);
    header.expect_magic('5');
    const std::uint64_t width = header.value("width");
    const std::uint64_t height = header.value("height");
    const std::uint64_t maxval = header.value("maxval");
    if (width == 0 || height == 0) raise(Errc::MalformedHeader, "zero image dimension");
    if (maxval != 255) raise(Errc::UnsupportedMaxval, "maxval " + std::to_string(maxval));

    const auto raster = header.raster();
    const std::uint64_t needed = width * height;
    if (raster.size() < needed)
        raise(Errc::TruncatedPixelData, "raster has " + std::to_string(raster.size()) +
                                            " bytes, needs " + std::to_string(needed));
    return Eigen::Map<const GrayImage>(raster.data(), static_cast<Eigen::Index>(height),
                                       static_cast<Eigen::Index>(width));
}

inline std::vector<std::uint8_t> write_bitmap(const BitMatrix& bits) {
    if (bits.rows() < 1 || bits.cols() < 1)
        raise(Errc::DimensionMismatch, "cannot encode an empty bitmap");
    const Eigen::Index bytes_per_row = (bits.cols() + 7) / 8;
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(bits.rows() * bytes_per_row) + 32);
    detail::append_header(out, "P4\n" + std::to_string(bits.cols()) + " " +
                                   std::to_string(bits.rows()) + "\n");
    for (Eigen::Index i = 0; i < bits.rows(); ++i) {
        for (Eigen::Index byte = 0; byte < bytes_per_row; ++byte) {
            std::uint8_t packed = 0;
            for (Eigen::Index k = 0; k < 8; ++k) {
                const Eigen::Index j = byte * 8 + k;
                if (j < bits.cols() && bits(i, j)) packed |= static_cast<std::uint8_t>(0x80u >> k);
            }
            out.push_back(packed);
        }
    }
    return out;
}

inline BitMatrix read_bitmap(std::span<const std::uint8_t> bytes) {
    detail::HeaderReader header(bytes);
    header.expect_magic('4');
    const std::uint64_t width = header.value("width");
    const std::uint64_t height = header.value("height");
    if (width == 0 || height == 0) raise(Errc::MalformedHeader, "zero bitmap dimension");

    const auto raster = header.raster();
    const std::uint64_t bytes_per_row = (width + 7) / 8;
    if (raster.size() < bytes_per_row * height)
        raise(Errc::TruncatedPixelData, "raster has " + std::to_string(raster.size()) +
                                            " bytes, needs " + std::to_string(bytes_per_row * height));

    BitMatrix bits(static_cast<Eigen::Index>(height), static_cast<Eigen::Index>(width));
    for (Eigen::Index i = 0; i < bits.rows(); ++i) {
        const std::uint8_t* row = raster.data() + static_cast<std::size_t>(i) * bytes_per_row;
        for (Eigen::Index j = 0; j < bits.cols(); ++j)
            bits(i, j) = (row[j / 8] >> (7 - j % 8)) & 1u;
    }
    return bits;
}

}  // namespace oew
