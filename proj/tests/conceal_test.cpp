#include <doctest.h>

#include <array>
#include <vector>

#include "esl/conceal.hpp"
#include "esl/error.hpp"
#include "esl/pipeline.hpp"
#include "esl/synth.hpp"

namespace {

// Hand-built receiver state: every block starts unknown and gray.
esl::ReceiverState blank_state(int blocks_x, int blocks_y) {
    esl::ReceiverState state;
    state.header.width = std::uint16_t(blocks_x * 8);
    state.header.height = std::uint16_t(blocks_y * 8);
    state.header.orig_width = state.header.width;
    state.header.orig_height = state.header.height;
    state.header.column_offset = 4;
    state.raster.width = blocks_x * 8;
    state.raster.height = blocks_y * 8;
    state.raster.orig_width = state.raster.width;
    state.raster.orig_height = state.raster.height;
    state.raster.pixels.assign(std::size_t(state.raster.width) * state.raster.height, 128);
    const int count = blocks_x * blocks_y;
    state.block_known.assign(std::size_t(count), 0);
    state.mask.lost.assign(std::size_t(count), 1);
    state.recovered.assign(std::size_t(count), std::nullopt);
    return state;
}

void know_block(esl::ReceiverState& state, int block_row, int block_col,
                std::uint8_t value) {
    const esl::BlockGrid grid = state.header.grid();
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            state.raster.at(block_col * 8 + c, block_row * 8 + r) = value;
    const int i = grid.index(block_row, block_col);
    state.block_known[std::size_t(i)] = 1;
    state.mask.lost[std::size_t(i)] = 0;
}

esl::EdgeColumn all_ones() {
    esl::EdgeColumn column;
    column.bits.fill(1);
    return column;
}

} // namespace

TEST_CASE("decoding a complete stream recovers every block and every edge column") {
    const esl::Image image = esl::synth_scene(32, 32, 3);
    const esl::EmbedResult embedded = esl::embed_image(image);
    esl::LossMask mask;
    mask.lost.assign(16, 0);

    const esl::ReceiverState state = esl::decode_received(embedded.stream, mask);
    CHECK(state.warnings.empty());
    for (int i = 0; i < 16; ++i) {
        CHECK(state.block_known[std::size_t(i)] == 1);
        REQUIRE(state.recovered[std::size_t(i)].has_value());
        CHECK(*state.recovered[std::size_t(i)] == esl::extract_column(embedded.edges, i, 4));
    }
    CHECK(state.raster.pixels == esl::decode_full(embedded.stream).pixels);
}

TEST_CASE("a fully lost stream leaves everything unknown and gray") {
    const esl::Image image = esl::synth_scene(32, 32, 3);
    const esl::EmbedResult embedded = esl::embed_image(image);
    esl::LossMask mask;
    mask.lost.assign(16, 1);
    esl::PacketStream empty;
    empty.header = embedded.stream.header;

    const esl::ReceiverState state = esl::decode_received(empty, mask);
    for (int i = 0; i < 16; ++i) {
        CHECK(state.block_known[std::size_t(i)] == 0);
        CHECK(!state.recovered[std::size_t(i)].has_value());
    }
    for (std::uint8_t p : state.raster.pixels)
        CHECK(p == 128);
}

TEST_CASE("one lost block still gets its edge column from the surviving carrier") {
    const esl::Image image = esl::synth_scene(32, 32, 4);
    const esl::EmbedResult embedded = esl::embed_image(image);
    const int lost = 5;
    esl::LossMask mask;
    mask.lost.assign(16, 0);
    mask.lost[lost] = 1;
    esl::PacketStream lossy;
    lossy.header = embedded.stream.header;
    for (const esl::Packet& packet : embedded.stream.packets)
        if (packet.block_index != lost)
            lossy.packets.push_back(packet);

    const esl::ReceiverState state = esl::decode_received(lossy, mask);
    CHECK(state.block_known[lost] == 0);
    REQUIRE(state.recovered[lost].has_value());
    CHECK(*state.recovered[lost] == esl::extract_column(embedded.edges, lost, 4));
}

TEST_CASE("stream and mask must agree") {
    const esl::Image image = esl::synth_scene(32, 32, 4);
    const esl::EmbedResult embedded = esl::embed_image(image);

    esl::LossMask short_mask;
    short_mask.lost.assign(15, 0);
    CHECK_THROWS_AS(esl::decode_received(embedded.stream, short_mask), esl::FormatError);

    esl::LossMask claims_lost;
    claims_lost.lost.assign(16, 0);
    claims_lost.lost[3] = 1; // packet 3 is present though
    CHECK_THROWS_AS(esl::decode_received(embedded.stream, claims_lost), esl::FormatError);

    esl::PacketStream missing = embedded.stream;
    missing.packets.erase(missing.packets.begin());
    esl::LossMask all_received;
    all_received.lost.assign(16, 0);
    CHECK_THROWS_AS(esl::decode_received(missing, all_received), esl::FormatError);
}

TEST_CASE("an undecodable packet is demoted to lost with a warning") {
    const esl::Image image = esl::synth_scene(32, 32, 5);
    esl::EmbedResult embedded = esl::embed_image(image);
    embedded.stream.packets[6].payload = {0xFF, 0xFF, 0xFF};
    esl::LossMask mask;
    mask.lost.assign(16, 0);

    esl::ReceiverState state = esl::decode_received(embedded.stream, mask);
    CHECK(state.block_known[6] == 0);
    CHECK(state.mask.lost[6] == 1);
    REQUIRE(state.warnings.size() == 1);
    CHECK(state.warnings[0].find("block 6") != std::string::npos);

    const esl::Image healed = esl::conceal_all(state);
    CHECK(healed.pixels.size() == std::size_t(32 * 32));
}

TEST_CASE("a constant right neighbor floods the block in the right-to-left pass") {
    esl::ReceiverState state = blank_state(3, 1);
    know_block(state, 0, 2, 100);

    const esl::PassFill fill = esl::smooth_pass(state, 1, esl::PassDirection::FromRight);
    CHECK(!fill.skipped);
    for (int k = 0; k < 64; ++k) {
        CHECK(fill.filled[std::size_t(k)] == 1);
        CHECK(fill.values[std::size_t(k)] == 100);
    }
}

TEST_CASE("an all-ones edge column stops the passes at the embedded column") {
    esl::ReceiverState state = blank_state(3, 1);
    know_block(state, 0, 0, 40);
    know_block(state, 0, 2, 100);
    state.recovered[1] = all_ones();

    const esl::PassFill right = esl::smooth_pass(state, 1, esl::PassDirection::FromRight);
    const esl::PassFill left = esl::smooth_pass(state, 1, esl::PassDirection::FromLeft);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            const std::size_t k = std::size_t(r) * 8 + std::size_t(c);
            CHECK(right.filled[k] == (c >= 4 ? 1 : 0));
            CHECK(left.filled[k] == (c < 4 ? 1 : 0));
            if (c >= 4)
                CHECK(right.values[k] == 100);
            else
                CHECK(left.values[k] == 40);
        }
}

TEST_CASE("a pass is skipped when its source-side neighbor is unknown or off-grid") {
    esl::ReceiverState state = blank_state(3, 1);
    know_block(state, 0, 0, 50);

    CHECK(esl::smooth_pass(state, 1, esl::PassDirection::FromRight).skipped);
    CHECK(!esl::smooth_pass(state, 1, esl::PassDirection::FromLeft).skipped);

    esl::ReceiverState left_edge = blank_state(3, 1);
    know_block(left_edge, 0, 1, 50);
    CHECK(esl::smooth_pass(left_edge, 0, esl::PassDirection::FromLeft).skipped);
    CHECK(!esl::smooth_pass(left_edge, 0, esl::PassDirection::FromRight).skipped);

    esl::ReceiverState edge_state = blank_state(2, 1);
    know_block(edge_state, 0, 0, 50);
    CHECK(esl::smooth_pass(edge_state, 1, esl::PassDirection::FromRight).skipped);
}

TEST_CASE("smoothing a known block is a contract violation") {
    esl::ReceiverState state = blank_state(2, 1);
    know_block(state, 0, 0, 50);
    CHECK_THROWS_AS(esl::smooth_pass(state, 0, esl::PassDirection::FromRight),
                    esl::ArgumentError);
    CHECK_THROWS_AS(esl::smooth_pass(state, 5, esl::PassDirection::FromRight),
                    esl::ArgumentError);
}

TEST_CASE("the three-pixel stencil averages the adjacent source column with row clamping") {
    esl::ReceiverState state = blank_state(2, 1);
    // Right neighbor known; its leftmost column carries 0,10,...,70 by row.
    const esl::BlockGrid grid = state.header.grid();
    know_block(state, 0, 1, 0);
    for (int r = 0; r < 8; ++r)
        state.raster.at(8, r) = std::uint8_t(10 * r);
    (void)grid;

    const esl::PassFill fill = esl::smooth_pass(state, 0, esl::PassDirection::FromRight);
    const std::array<int, 8> expected_col7 = {5, 10, 20, 30, 40, 50, 60, 65};
    for (int r = 0; r < 8; ++r)
        CHECK(fill.values[std::size_t(r) * 8 + 7] == expected_col7[std::size_t(r)]);
    // Column 6, top row: mean of (0,7) and (1,7) = (5 + 10) / 2 = 7.5, rounds to 8.
    CHECK(fill.values[6] == 8);
    for (int k = 0; k < 64; ++k)
        CHECK(fill.filled[std::size_t(k)] == 1);
}

TEST_CASE("combining opposite constant fills averages them") {
    esl::ReceiverState state = blank_state(3, 1);
    know_block(state, 0, 0, 0);
    know_block(state, 0, 2, 100);

    const esl::PassFill right = esl::smooth_pass(state, 1, esl::PassDirection::FromRight);
    const esl::PassFill left = esl::smooth_pass(state, 1, esl::PassDirection::FromLeft);
    const std::array<std::uint8_t, 64> merged = esl::combine_passes(right, left);
    for (std::uint8_t v : merged)
        CHECK(v == 50);
}

TEST_CASE("an edge keeps the two fills apart instead of blending them") {
    esl::ReceiverState state = blank_state(3, 1);
    know_block(state, 0, 0, 0);
    know_block(state, 0, 2, 100);
    state.recovered[1] = all_ones();

    const esl::PassFill right = esl::smooth_pass(state, 1, esl::PassDirection::FromRight);
    const esl::PassFill left = esl::smooth_pass(state, 1, esl::PassDirection::FromLeft);
    const std::array<std::uint8_t, 64> merged = esl::combine_passes(right, left);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            CHECK(merged[std::size_t(r) * 8 + std::size_t(c)] == (c >= 4 ? 100 : 0));
}

TEST_CASE("combine falls back to the filled mean, then to mid-gray") {
    esl::PassFill right;
    right.skipped = true;
    esl::PassFill left;
    left.skipped = true;
    for (std::uint8_t v : esl::combine_passes(right, left))
        CHECK(v == 128);

    // One pass filled only the top row with 10s: the rest gets that mean.
    esl::PassFill partial;
    for (int c = 0; c < 8; ++c) {
        partial.values[std::size_t(c)] = 10;
        partial.filled[std::size_t(c)] = 1;
    }
    esl::PassFill skipped;
    skipped.skipped = true;
    const std::array<std::uint8_t, 64> merged = esl::combine_passes(partial, skipped);
    for (int k = 0; k < 64; ++k)
        CHECK(merged[std::size_t(k)] == 10);
}

TEST_CASE("overlapping fills round half away from zero") {
    esl::PassFill a;
    esl::PassFill b;
    a.values[0] = 1;
    a.filled[0] = 1;
    b.values[0] = 2;
    b.filled[0] = 1;
    CHECK(esl::combine_passes(a, b)[0] == 2); // 1.5 rounds up
}

TEST_CASE("a fully lost row heals left to right using earlier concealments") {
    esl::ReceiverState state = blank_state(3, 1);
    esl::ReceiverState copy = state;

    const esl::Image healed = esl::conceal_all(state);
    for (std::uint8_t p : healed.pixels)
        CHECK(p == 128);
    for (std::uint8_t known : state.block_known)
        CHECK(known == 1);

    const esl::Image again = esl::conceal_all(copy);
    CHECK(again.pixels == healed.pixels);
}

TEST_CASE("vertical neighbors are not consulted by the passes") {
    // Middle row lost; rows above and below are bright. The leftmost lost
    // block has no usable horizontal source, so it falls back to mid-gray
    // rather than borrowing from the bright rows.
    esl::ReceiverState state = blank_state(3, 3);
    for (int c = 0; c < 3; ++c) {
        know_block(state, 0, c, 250);
        know_block(state, 2, c, 250);
    }
    const esl::Image healed = esl::conceal_all(state);
    for (int x = 0; x < 24; ++x)
        for (int y = 8; y < 16; ++y)
            CHECK(healed.at(x, y) == 128);
}

TEST_CASE("concealment touches nothing when nothing was lost") {
    const esl::Image image = esl::synth_scene(32, 32, 6);
    const esl::EmbedResult embedded = esl::embed_image(image);
    esl::LossMask mask;
    mask.lost.assign(16, 0);
    esl::ReceiverState state = esl::decode_received(embedded.stream, mask);
    const esl::Image before = state.raster;
    const esl::Image healed = esl::conceal_all(state);
    CHECK(healed.pixels == before.pixels);
}

TEST_CASE("an isolated loss is filled from both horizontal neighbors") {
    const esl::Image image = esl::synth_scene(48, 24, 7);
    const esl::EmbedResult embedded = esl::embed_image(image);
    const esl::BlockGrid grid = embedded.stream.header.grid();
    const int lost = grid.index(1, 3);
    esl::LossMask mask;
    mask.lost.assign(std::size_t(grid.count()), 0);
    mask.lost[std::size_t(lost)] = 1;
    esl::PacketStream lossy;
    lossy.header = embedded.stream.header;
    for (const esl::Packet& packet : embedded.stream.packets)
        if (int(packet.block_index) != lost)
            lossy.packets.push_back(packet);

    esl::ReceiverState state = esl::decode_received(lossy, mask);
    const esl::PassFill right = esl::smooth_pass(state, lost, esl::PassDirection::FromRight);
    const esl::PassFill left = esl::smooth_pass(state, lost, esl::PassDirection::FromLeft);
    const std::array<std::uint8_t, 64> expected = esl::combine_passes(right, left);

    const esl::Image healed = esl::conceal_all(state);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            CHECK(healed.at(grid.col_of(lost) * 8 + c, grid.row_of(lost) * 8 + r) ==
                  expected[std::size_t(r) * 8 + std::size_t(c)]);
}
