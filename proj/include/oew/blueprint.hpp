#pragma once

#include <Eigen/Dense>

#include "oew/types.hpp"

namespace oew {

/// Record every pixel's offset from its row's first column. Column 0 is the
/// anchor, so its magnitude is 0 and its key is 1; ties (equal values) also
/// key to 1, which means a 0 key always comes with a magnitude >= 1.
inline Blueprint build_blueprint(const GrayImage& image) {
    Eigen::MatrixXi diff = image.cast<int>();
    diff.colwise() -= image.col(0).cast<int>().eval();

    Blueprint bp;
    bp.magnitudes = diff.cwiseAbs().cast<std::uint8_t>();
    bp.keys = (diff.array() >= 0).matrix();
    return bp;
}

/// Rebuild an image from its blueprint. Only column 0 of first_column_source
/// is read; every output pixel is that row anchor plus or minus the recorded
/// magnitude. A result outside [0, 255] means the blueprint does not belong
/// to this image and is reported, never clamped.
inline GrayImage reconstruct_image(const GrayImage& first_column_source, const Blueprint& bp) {
    require_same_size(first_column_source, bp.magnitudes, "image vs blueprint");
    require_same_size(bp.magnitudes, bp.keys, "blueprint magnitudes vs keys");

    const Eigen::Index w = bp.cols();
    Eigen::MatrixXi anchors = first_column_source.col(0).cast<int>().eval().replicate(1, w);
    Eigen::MatrixXi mags = bp.magnitudes.cast<int>();
    Eigen::MatrixXi rec = bp.keys.array().select(anchors + mags, anchors - mags);

    if (rec.size() > 0 && (rec.minCoeff() < 0 || rec.maxCoeff() > 255))
        raise(Errc::RangeViolation, "reconstructed pixel outside [0,255]; blueprint does not match image");
    return rec.cast<std::uint8_t>();
}

}  // namespace oew
