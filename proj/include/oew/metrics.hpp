#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <tuple>
#include <utility>

#include "oew/types.hpp"

namespace oew {

inline constexpr double kPeakValue = 255.0;

template <typename DerivedA, typename DerivedB>
double mse(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    require_same_size(a, b, "mse");
    const std::int64_t sum_sq = (a.derived().template cast<std::int64_t>() -
                                 b.derived().template cast<std::int64_t>())
                                    .array()
                                    .square()
                                    .sum();
    return static_cast<double>(sum_sq) / static_cast<double>(a.size());
}

/// Peak signal-to-noise ratio in dB against the fixed 8-bit peak 255;
/// +infinity for identical inputs.
template <typename DerivedA, typename DerivedB>
double psnr(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    const double m = mse(a, b);
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(kPeakValue * kPeakValue / m);
}

/// Pearson correlation over all elements. Moments are accumulated in exact
/// integer arithmetic, so a result of +/-1 is decided exactly (num^2 == A*B)
/// rather than through floating-point square roots.
template <typename DerivedA, typename DerivedB>
double correlation(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    require_same_size(a, b, "correlation");

    const auto xs = a.derived().template cast<std::int64_t>().eval();
    const auto ys = b.derived().template cast<std::int64_t>().eval();
    const std::int64_t n = xs.size();
    const std::int64_t sx = xs.sum();
    const std::int64_t sy = ys.sum();
    const std::int64_t sxx = xs.array().square().sum();
    const std::int64_t syy = ys.array().square().sum();
    const std::int64_t sxy = (xs.array() * ys.array()).sum();

    using wide = __int128;
    const wide var_x = wide(n) * sxx - wide(sx) * sx;
    const wide var_y = wide(n) * syy - wide(sy) * sy;
    if (var_x == 0) raise(Errc::ZeroVariance, "first input is constant");
    if (var_y == 0) raise(Errc::ZeroVariance, "second input is constant");

    const wide num = wide(n) * sxy - wide(sx) * sy;
    constexpr wide exact_limit = wide(1) << 62;  // num^2 must stay inside __int128
    if (var_x < exact_limit && var_y < exact_limit && num < exact_limit && -num < exact_limit) {
        if (num * num == var_x * var_y) return num > 0 ? 1.0 : -1.0;
    }
    return static_cast<double>(num) /
           std::sqrt(static_cast<double>(var_x) * static_cast<double>(var_y));
}

/// Maximum absolute pixel difference and number of differing pixels.
template <typename DerivedA, typename DerivedB>
std::pair<int, std::int64_t> diff_stats(const Eigen::MatrixBase<DerivedA>& a,
                                        const Eigen::MatrixBase<DerivedB>& b) {
    require_same_size(a, b, "diff_stats");
    if (a.size() == 0) return {0, 0};
    const auto abs_diff =
        (a.derived().template cast<int>() - b.derived().template cast<int>()).cwiseAbs().eval();
    return {abs_diff.maxCoeff(), (abs_diff.array() != 0).count()};
}

inline QualityReport quality_report(const GrayImage& cover, const GrayImage& watermarked) {
    QualityReport q;
    q.total_pixels = cover.size();
    q.mse = mse(cover, watermarked);
    q.psnr = psnr(cover, watermarked);
    std::tie(q.max_abs_diff, q.changed_pixels) = diff_stats(cover, watermarked);
    return q;
}

/// Expected PSNR of one embedding pass when each payload pixel changes with
/// probability 1/2: 10*log10(255^2 * H*W / (0.5 * msg_rows * msg_cols)).
inline double expected_psnr(Eigen::Index cover_h, Eigen::Index cover_w, Eigen::Index msg_rows,
                            Eigen::Index msg_cols) {
    if (cover_h < 1 || cover_w < 2)
        raise(Errc::DimensionMismatch, "cover must be at least 1x2");
    if (msg_rows < 1 || msg_cols < 1 || msg_rows > cover_h || msg_cols > cover_w - 1)
        raise(Errc::MessageTooLarge, "message geometry does not fit the cover");
    const double expected_changed = 0.5 * static_cast<double>(msg_rows) * static_cast<double>(msg_cols);
    const double pixels = static_cast<double>(cover_h) * static_cast<double>(cover_w);
    return 10.0 * std::log10(kPeakValue * kPeakValue * pixels / expected_changed);
}

}  // namespace oew
