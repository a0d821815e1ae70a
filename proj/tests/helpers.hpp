#pragma once

#include <initializer_list>
#include <stdexcept>

#include "oew/types.hpp"

namespace testutil {

/// Runs fn, which must throw an oew::Error, and returns its code.
template <typename Fn>
oew::Errc error_code_of(Fn&& fn) {
    try {
        fn();
    } catch (const oew::Error& e) {
        return e.code();
    }
    throw std::runtime_error("expected an oew::Error, none was thrown");
}

inline oew::GrayImage gray(std::initializer_list<std::initializer_list<int>> rows) {
    oew::GrayImage image(rows.size(), rows.begin()->size());
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (const int v : row) image(i, j++) = static_cast<std::uint8_t>(v);
        ++i;
    }
    return image;
}

inline oew::BitMatrix bits(std::initializer_list<std::initializer_list<int>> rows) {
    oew::BitMatrix m(rows.size(), rows.begin()->size());
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index j = 0;
        for (const int v : row) m(i, j++) = v != 0;
        ++i;
    }
    return m;
}

// Shared 4x4 fixture used across suites: a cover whose payload parities
// already match this message, so embedding it is a no-op.
inline oew::GrayImage reference_cover() {
    return gray({{225, 225, 227, 228},
                 {226, 226, 228, 229},
                 {226, 224, 225, 226},
                 {221, 224, 228, 228}});
}

inline oew::BitMatrix reference_message() {
    return bits({{0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}});
}

}  // namespace testutil
