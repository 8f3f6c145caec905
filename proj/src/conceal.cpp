#include "esl/conceal.hpp"

#include <algorithm>
#include <cmath>

#include "esl/error.hpp"

namespace esl {

ReceiverState decode_received(const PacketStream& stream, const LossMask& mask) {
    const BlockGrid grid = stream.header.grid();
    const int count = grid.count();
    if (int(mask.lost.size()) != count)
        throw FormatError("mask covers " + std::to_string(mask.lost.size()) +
                          " blocks, stream has " + std::to_string(count));

    std::vector<const Packet*> by_index(std::size_t(count), nullptr);
    for (const Packet& packet : stream.packets) {
        if (packet.block_index >= std::uint32_t(count))
            throw FormatError("packet index " + std::to_string(packet.block_index) +
                              " outside the block grid");
        if (mask.is_lost(packet.block_index))
            throw FormatError("block " + std::to_string(packet.block_index) +
                              " present in the stream but marked lost in the mask");
        by_index[packet.block_index] = &packet;
    }
    for (int i = 0; i < count; ++i)
        if (!mask.is_lost(std::size_t(i)) && by_index[std::size_t(i)] == nullptr)
            throw FormatError("block " + std::to_string(i) +
                              " marked received in the mask but absent from the stream");

    ReceiverState state;
    state.header = stream.header;
    state.raster.width = stream.header.width;
    state.raster.height = stream.header.height;
    state.raster.orig_width = stream.header.orig_width;
    state.raster.orig_height = stream.header.orig_height;
    state.raster.pixels.assign(std::size_t(state.raster.width) * state.raster.height, 128);
    state.block_known.assign(std::size_t(count), 0);
    state.mask = mask;
    state.recovered.assign(std::size_t(count), std::nullopt);

    std::vector<std::optional<EdgeColumn>> carried(std::size_t(count), std::nullopt);
    for (int i = 0; i < count; ++i) {
        const Packet* packet = by_index[std::size_t(i)];
        if (packet == nullptr)
            continue;
        QuantizedBlock levels;
        try {
            levels = decode_block(packet->payload);
        } catch (const DecodeError& error) {
            state.mask.lost[std::size_t(i)] = 1;
            state.warnings.push_back("block " + std::to_string(i) +
                                     " failed to decode (" + error.what() +
                                     "); treating it as lost");
            continue;
        }
        carried[std::size_t(i)] = extract_block(levels);
        const Block spatial = inverse_dct(dequantize(levels), grid.row_of(i), grid.col_of(i));
        for (int r = 0; r < 8; ++r) {
            for (int c = 0; c < 8; ++c) {
                const int value = std::clamp(spatial.at(r, c) + 128, 0, 255);
                state.raster.at(grid.col_of(i) * 8 + c, grid.row_of(i) * 8 + r) =
                    std::uint8_t(value);
            }
        }
        state.block_known[std::size_t(i)] = 1;
    }

    const AssignmentPermutation assignment(count);
    for (int i = 0; i < count; ++i) {
        const int carrier = assignment.carrier_of(i);
        if (carried[std::size_t(carrier)])
            state.recovered[std::size_t(i)] = *carried[std::size_t(carrier)];
    }
    return state;
}

namespace {

bool row_in_pass(const std::optional<EdgeColumn>& edge, int edge_col, int row, int col,
                 PassDirection direction) {
    if (!edge || edge->bits[std::size_t(row)] == 0)
        return true;
    if (direction == PassDirection::FromRight)
        return col >= edge_col;
    return col < edge_col;
}

} // namespace

PassFill smooth_pass(const ReceiverState& state, int block_index, PassDirection direction) {
    const BlockGrid grid = state.header.grid();
    if (block_index < 0 || block_index >= grid.count())
        throw ArgumentError("block index out of range");
    if (state.block_known[std::size_t(block_index)])
        throw ArgumentError("smoothing a block that is already known");

    const int block_row = grid.row_of(block_index);
    const int block_col = grid.col_of(block_index);
    const bool from_right = direction == PassDirection::FromRight;

    PassFill fill;
    const int neighbor_col = block_col + (from_right ? 1 : -1);
    if (neighbor_col < 0 || neighbor_col >= grid.blocks_x ||
        !state.block_known[std::size_t(grid.index(block_row, neighbor_col))]) {
        fill.skipped = true;
        return fill;
    }

    const std::optional<EdgeColumn>& edge = state.recovered[std::size_t(block_index)];
    const int edge_col = state.header.column_offset;
    const int x0 = block_col * 8;
    const int y0 = block_row * 8;

    // Sources all live in the column one step toward the neighbor: inside
    // the block that is this pass's own earlier output, outside it the
    // already-known raster.
    auto source = [&](int row, int source_col, long long& sum, int& n) {
        if (row < 0 || row > 7)
            return;
        if (source_col >= 0 && source_col <= 7) {
            const std::size_t k = std::size_t(row) * 8 + std::size_t(source_col);
            if (!fill.filled[k])
                return;
            sum += fill.values[k];
        } else {
            sum += state.raster.at(x0 + source_col, y0 + row);
        }
        ++n;
    };

    for (int step = 0; step < 8; ++step) {
        const int col = from_right ? 7 - step : step;
        const int source_col = from_right ? col + 1 : col - 1;
        for (int row = 0; row < 8; ++row) {
            if (!row_in_pass(edge, edge_col, row, col, direction))
                continue;
            long long sum = 0;
            int n = 0;
            source(row - 1, source_col, sum, n);
            source(row, source_col, sum, n);
            source(row + 1, source_col, sum, n);
            const std::size_t k = std::size_t(row) * 8 + std::size_t(col);
            fill.values[k] = int(std::lround(double(sum) / n));
            fill.filled[k] = 1;
        }
    }
    return fill;
}

std::array<std::uint8_t, 64> combine_passes(const PassFill& right_fill,
                                            const PassFill& left_fill) {
    std::array<int, 64> merged{};
    std::array<std::uint8_t, 64> have{};
    long long filled_sum = 0;
    int filled_n = 0;
    for (std::size_t k = 0; k < 64; ++k) {
        const bool r = right_fill.filled[k] != 0;
        const bool l = left_fill.filled[k] != 0;
        if (!r && !l)
            continue;
        int value;
        if (r && l)
            value = int(std::lround((right_fill.values[k] + left_fill.values[k]) / 2.0));
        else
            value = r ? right_fill.values[k] : left_fill.values[k];
        merged[k] = value;
        have[k] = 1;
        filled_sum += value;
        ++filled_n;
    }
    const int fallback =
        filled_n > 0 ? int(std::lround(double(filled_sum) / filled_n)) : 128;

    std::array<std::uint8_t, 64> out{};
    for (std::size_t k = 0; k < 64; ++k)
        out[k] = std::uint8_t(std::clamp(have[k] ? merged[k] : fallback, 0, 255));
    return out;
}

Image conceal_all(ReceiverState& state) {
    const BlockGrid grid = state.header.grid();
    for (int i = 0; i < grid.count(); ++i) {
        if (state.block_known[std::size_t(i)])
            continue;
        const PassFill right_fill = smooth_pass(state, i, PassDirection::FromRight);
        const PassFill left_fill = smooth_pass(state, i, PassDirection::FromLeft);
        const std::array<std::uint8_t, 64> pixels = combine_passes(right_fill, left_fill);
        const int x0 = grid.col_of(i) * 8;
        const int y0 = grid.row_of(i) * 8;
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c)
                state.raster.at(x0 + c, y0 + r) = pixels[std::size_t(r) * 8 + std::size_t(c)];
        state.block_known[std::size_t(i)] = 1;
    }
    return state.raster;
}

} // namespace esl
