#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oew/blueprint.hpp"
#include "oew/parity.hpp"
#include "oew/types.hpp"

namespace oew {

inline void require_message_fits(const GrayImage& cover, Eigen::Index msg_rows,
                                 Eigen::Index msg_cols, const std::string& what) {
    if (msg_rows > cover.rows() || msg_cols > cover.cols() - 1)
        raise(Errc::MessageTooLarge,
              what + ": message " + std::to_string(msg_rows) + "x" + std::to_string(msg_cols) +
                  " does not fit cover " + std::to_string(cover.rows()) + "x" +
                  std::to_string(cover.cols()) + " (needs rows <= " + std::to_string(cover.rows()) +
                  ", cols <= " + std::to_string(cover.cols() - 1) + ")");
}

/// Embed one bit per payload pixel. Bit (i, j) lands in pixel (i, j+1);
/// column 0 and everything outside the payload region keep their cover
/// values. The returned blueprint spans the full cover so recovery can
/// restore every pixel.
inline EmbedResult embed(const GrayImage& cover, const BitMatrix& message) {
    require_message_fits(cover, message.rows(), message.cols(), "embed");

    EmbedResult result;
    result.watermarked = cover;
    result.watermarked.block(0, 1, message.rows(), message.cols()) =
        cover.block(0, 1, message.rows(), message.cols())
            .binaryExpr(message.cast<std::uint8_t>(),
                        [](std::uint8_t p, std::uint8_t b) { return embed_bit(p, b != 0); });
    result.blueprint = build_blueprint(cover);
    result.message_rows = message.rows();
    result.message_cols = message.cols();
    return result;
}

inline BitMatrix extract_message(const GrayImage& watermarked, Eigen::Index message_rows,
                                 Eigen::Index message_cols) {
    require_message_fits(watermarked, message_rows, message_cols, "extract");
    return watermarked.block(0, 1, message_rows, message_cols)
        .unaryExpr([](std::uint8_t p) { return decode_bit(p); });
}

inline GrayImage recover_cover(const GrayImage& watermarked, const Blueprint& bp) {
    return reconstruct_image(watermarked, bp);
}

/// Layered embedding: each layer treats the previous output as its cover and
/// records that cover's blueprint, so the stack can be unwound exactly.
inline std::pair<GrayImage, LayerStack> embed_multilayer(const GrayImage& cover,
                                                         const std::vector<BitMatrix>& messages) {
    if (messages.empty()) raise(Errc::EmptyStack, "embed_multilayer needs at least one message");

    GrayImage current = cover;
    LayerStack stack;
    stack.reserve(messages.size());
    for (std::size_t k = 0; k < messages.size(); ++k) {
        require_message_fits(current, messages[k].rows(), messages[k].cols(),
                             "embed_multilayer layer " + std::to_string(k + 1));
        EmbedResult r = embed(current, messages[k]);
        stack.push_back({r.message_rows, r.message_cols, std::move(r.blueprint)});
        current = std::move(r.watermarked);
    }
    return {std::move(current), std::move(stack)};
}

/// Inverse of embed_multilayer: peel layers last-to-first, reading each
/// layer's message before rewinding to that layer's input image. Messages
/// come back in embed order together with the fully recovered cover.
inline std::pair<std::vector<BitMatrix>, GrayImage> extract_multilayer(const GrayImage& watermarked,
                                                                       const LayerStack& stack) {
    if (stack.empty()) raise(Errc::EmptyStack, "extract_multilayer needs a non-empty layer stack");

    GrayImage current = watermarked;
    std::vector<BitMatrix> messages(stack.size());
    for (std::size_t k = stack.size(); k-- > 0;) {
        const Layer& layer = stack[k];
        messages[k] = extract_message(current, layer.message_rows, layer.message_cols);
        current = reconstruct_image(current, layer.blueprint);
    }
    return {std::move(messages), std::move(current)};
}

}  // namespace oew
