#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "esl/channel.hpp"
#include "esl/codec.hpp"
#include "esl/edge_map.hpp"

namespace esl {

/// Receiver-side view of one transmission: the raster with survivors
/// decoded, per-block knownness, and whatever edge columns could be pulled
/// out of surviving carrier blocks.
struct ReceiverState {
    StreamHeader header;
    Image raster;                           // lost blocks hold 128 until concealed
    std::vector<std::uint8_t> block_known;  // 1 once the block's pixels are trustworthy
    LossMask mask;                          // channel mask plus decode-failure reclassifications
    std::vector<std::optional<EdgeColumn>> recovered; // edge column per block, where its carrier decoded
    std::vector<std::string> warnings;
};

/// Decode every surviving packet (Huffman, inverse zigzag, dequantize,
/// inverse DCT, inverse level shift) and harvest the embedded edge columns
/// from the quantized levels. A packet that fails to decode demotes its
/// block to lost and records a warning instead of aborting.
/// The mask must cover exactly the grid, and the surviving packet set must
/// match its zero entries; anything else is a FormatError.
ReceiverState decode_received(const PacketStream& stream, const LossMask& mask);

enum class PassDirection { FromRight, FromLeft };

/// What one directional pass managed to fill inside a lost block.
struct PassFill {
    std::array<int, 64> values{};          // row-major, valid where filled
    std::array<std::uint8_t, 64> filled{}; // per-pixel flags
    bool skipped = false;                  // source-side neighbor was unknown
};

/// One directional smoothing pass over a lost block. FromRight fills
/// columns 7 down to 0; each pixel becomes the rounded mean of its three
/// nearest already-known pixels in the column to its right (two at the top
/// and bottom rows). In rows whose recovered edge bit is set the pass stops
/// at the embedded edge column: FromRight fills it and goes no further,
/// FromLeft stops one column short, so the two fills partition the row at
/// the edge instead of blending across it. Without a recovered edge column
/// the pass runs unconstrained. If the source-side neighbor block is
/// unknown (or off-grid) the pass is skipped.
PassFill smooth_pass(const ReceiverState& state, int block_index, PassDirection direction);

/// Merge the two passes: pixels filled by both are averaged, pixels filled
/// by one keep that value, pixels reached by neither get the mean of the
/// filled pixels (or 128 if nothing was filled). Output is clamped 8-bit.
std::array<std::uint8_t, 64> combine_passes(const PassFill& right_fill,
                                            const PassFill& left_fill);

/// Conceal every lost block in raster order; blocks concealed earlier serve
/// as known neighbors for later ones, so the result has no unknown pixels.
/// Updates the state in place and returns the completed raster.
Image conceal_all(ReceiverState& state);

} // namespace esl
