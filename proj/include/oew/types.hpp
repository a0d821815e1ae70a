#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oew {

// All pixel data is 8-bit grayscale, stored row-major so raster I/O can map
// the matrix storage directly.
using GrayImage = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// A binary message: one payload bit per element.
using BitMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using ByteMatrix = GrayImage;

/// Side information that makes embedding reversible: per-pixel absolute
/// differences against the row's first column (magnitudes) plus the sign
/// key (true: add magnitude to the first-column value, false: subtract).
struct Blueprint {
    ByteMatrix magnitudes;
    BitMatrix keys;

    Eigen::Index rows() const { return magnitudes.rows(); }
    Eigen::Index cols() const { return magnitudes.cols(); }
};

/// One embedding layer: where the payload sits plus the blueprint of the
/// image that layer was embedded into.
struct Layer {
    Eigen::Index message_rows = 0;
    Eigen::Index message_cols = 0;
    Blueprint blueprint;
};

// Layers in embed order; extraction walks them back-to-front.
using LayerStack = std::vector<Layer>;

struct EmbedResult {
    GrayImage watermarked;
    Blueprint blueprint;
    Eigen::Index message_rows = 0;
    Eigen::Index message_cols = 0;
};

/// Distortion summary for one embed run. psnr is +infinity exactly when the
/// images are identical (mse == 0, changed_pixels == 0).
struct QualityReport {
    double psnr = 0.0;
    double mse = 0.0;
    int max_abs_diff = 0;
    std::int64_t changed_pixels = 0;
    std::int64_t total_pixels = 0;
};

enum class Errc {
    DimensionMismatch,
    RangeViolation,
    MessageTooLarge,
    EmptyStack,
    ZeroVariance,
    MalformedHeader,
    UnsupportedMaxval,
    TruncatedPixelData,
    BadMagic,
    UnsupportedVersion,
    CrcMismatch,
    Truncated,
    InconsistentDimensions,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::RangeViolation: return "RangeViolation";
        case Errc::MessageTooLarge: return "MessageTooLarge";
        case Errc::EmptyStack: return "EmptyStack";
        case Errc::ZeroVariance: return "ZeroVariance";
        case Errc::MalformedHeader: return "MalformedHeader";
        case Errc::UnsupportedMaxval: return "UnsupportedMaxval";
        case Errc::TruncatedPixelData: return "TruncatedPixelData";
        case Errc::BadMagic: return "BadMagic";
        case Errc::UnsupportedVersion: return "UnsupportedVersion";
        case Errc::CrcMismatch: return "CrcMismatch";
        case Errc::Truncated: return "Truncated";
        case Errc::InconsistentDimensions: return "InconsistentDimensions";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

template <typename DerivedA, typename DerivedB>
bool same_size(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    return a.rows() == b.rows() && a.cols() == b.cols();
}

/// Elementwise bit-exact equality (false on shape mismatch).
template <typename DerivedA, typename DerivedB>
bool identical(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    if (!same_size(a, b)) return false;
    if (a.size() == 0) return true;
    return (a.derived().array() == b.derived().array()).all();
}

template <typename DerivedA, typename DerivedB>
void require_same_size(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                       const char* what) {
    if (!same_size(a, b))
        raise(Errc::DimensionMismatch,
              std::string(what) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                  " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

}  // namespace oew
