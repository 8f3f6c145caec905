#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace esl {

/// 8-bit grayscale raster. Width and height are always multiples of 8;
/// images that arrive with other dimensions are edge-replicated up to the
/// next multiple at read time, and the pre-padding size is kept in
/// orig_width/orig_height so writers can crop back.
struct Image {
    int width = 0;
    int height = 0;
    int orig_width = 0;  // unpadded extent, <= width
    int orig_height = 0; // unpadded extent, <= height
    std::vector<std::uint8_t> pixels; // row-major, width*height entries

    std::uint8_t at(int x, int y) const { return pixels[std::size_t(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[std::size_t(y) * width + x]; }
    bool padded() const { return width != orig_width || height != orig_height; }
};

/// Zero-centered samples after the forward level shift (pixel - 128).
struct SignedImage {
    int width = 0;
    int height = 0;
    std::vector<std::int16_t> samples; // row-major

    std::int16_t at(int x, int y) const { return samples[std::size_t(y) * width + x]; }
};

/// One 8x8 tile of level-shifted samples, tagged with its grid position.
struct Block {
    std::array<std::int16_t, 64> values{};
    int block_row = 0;
    int block_col = 0;

    std::int16_t at(int r, int c) const { return values[std::size_t(r) * 8 + c]; }
    std::int16_t& at(int r, int c) { return values[std::size_t(r) * 8 + c]; }
};

/// Block-grid geometry. Raster convention: index i = block_row * blocks_x + block_col.
struct BlockGrid {
    int blocks_x = 0;
    int blocks_y = 0;

    int count() const { return blocks_x * blocks_y; }
    int index(int block_row, int block_col) const { return block_row * blocks_x + block_col; }
    int row_of(int index) const { return index / blocks_x; }
    int col_of(int index) const { return index % blocks_x; }
};

BlockGrid grid_for(int width, int height);

/// Construct a validated Image from raw pixels (dimensions must already be
/// multiples of 8). Throws ArgumentError on any invariant violation.
Image make_image(int width, int height, std::vector<std::uint8_t> pixels);

/// Pad an arbitrary-sized raster to multiples of 8 by replicating the last
/// row/column; records the original extent.
Image pad_to_blocks(int width, int height, const std::vector<std::uint8_t>& pixels);

/// Drop the replication padding, restoring the original extent.
Image crop_to_original(const Image& image);

/// Read a P5 (binary) or P2 (ASCII) PGM with maxval 255. Non-multiple-of-8
/// dimensions are padded by edge replication. Parse failures report the byte
/// offset; maxval != 255 is rejected as unsupported.
Image read_pgm(const std::string& path);

/// Parse PGM bytes already in memory (same contract as read_pgm).
Image parse_pgm(const std::vector<std::uint8_t>& data, const std::string& origin);

/// Write as binary P5, cropped to the original (unpadded) extent.
void write_pgm(const Image& image, const std::string& path);

/// Forward level shift: subtract 128 from every pixel.
SignedImage level_shift_forward(const Image& image);

/// Inverse level shift: add 128 and clamp to [0, 255]. Padded-extent
/// metadata is supplied by the caller.
Image level_shift_inverse(const SignedImage& shifted, int orig_width, int orig_height);

/// Split into non-overlapping 8x8 blocks in raster order.
std::vector<Block> partition(const SignedImage& image);

/// Inverse of partition.
SignedImage assemble(const std::vector<Block>& blocks, int width, int height);

} // namespace esl
