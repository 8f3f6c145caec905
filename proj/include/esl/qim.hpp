#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "esl/edge_map.hpp"

namespace esl {

/// The 8 coefficient positions that hold watermark bits, as (row, col)
/// pairs, 0-based, listed in payload order: bit k of an EdgeColumn goes to
/// watermark_positions()[k].  None of them is the DC position.
const std::array<std::pair<int, int>, 8>& watermark_positions();

/// Ratios produced by dividing DCT coefficients by the quantization matrix,
/// before any rounding.
struct RatioBlock {
    std::array<double, 64> values{};

    double at(int r, int c) const { return values[std::size_t(r) * 8 + c]; }
    double& at(int r, int c) { return values[std::size_t(r) * 8 + c]; }
};

/// Integer quantized coefficient levels, raster order.
struct QuantizedBlock {
    std::array<int, 64> levels{};

    int at(int r, int c) const { return levels[std::size_t(r) * 8 + c]; }
    int& at(int r, int c) { return levels[std::size_t(r) * 8 + c]; }
};

/// Round to the nearest integer whose parity (of the absolute value) equals
/// bit. Equidistant candidates resolve to the smaller absolute value; a
/// +k/-k sign tie resolves positive.  The result never differs from the
/// plain nearest integer by more than one step.
int parity_round(double ratio, int bit);

/// Baseline JPEG rounding: nearest integer, halves away from zero.
int standard_round(double ratio);

/// Quantize a ratio block, hiding the payload: the 8 watermark positions are
/// parity-rounded with the payload bits, everything else (DC included) is
/// standard-rounded.
QuantizedBlock embed_block(const RatioBlock& ratios, const EdgeColumn& payload);

/// Recover the embedded column from the parity of the watermark positions.
EdgeColumn extract_block(const QuantizedBlock& levels);

} // namespace esl
