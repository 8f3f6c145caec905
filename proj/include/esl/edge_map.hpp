#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "esl/image.hpp"

namespace esl {

/// Binary edge raster, same (padded) dimensions as the source image.
struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits; // 0 or 1, row-major

    std::uint8_t at(int x, int y) const { return bits[std::size_t(y) * width + x]; }
};

/// The 8 vertical edge bits picked from one column of a block, top to bottom.
/// This is the per-block watermark payload.
struct EdgeColumn {
    std::array<std::uint8_t, 8> bits{};
    int source_block = -1;

    bool operator==(const EdgeColumn& other) const { return bits == other.bits; }
};

/// Fixed-point-free permutation mapping each block to the carrier block that
/// stores its edge column. Half-grid cyclic shift:
///   carrier_of(i) = (i + floor(N/2)) mod N
/// The shift is invertible with no side information, and a block and its
/// carrier sit half a raster apart, so a single loss burst rarely takes both.
class AssignmentPermutation {
public:
    explicit AssignmentPermutation(int block_count);

    int block_count() const { return block_count_; }
    int carrier_of(int block_index) const;
    /// Inverse mapping: the unique block whose edge column the carrier holds.
    int source_of(int carrier_index) const;

private:
    int block_count_;
    int shift_;
};

/// Sobel edge detector with reflected borders. A pixel is an edge iff its
/// gradient magnitude reaches threshold * (max magnitude over the image);
/// a constant image has no edges. threshold must lie in (0, 1].
EdgeMap detect_edges(const Image& image, double threshold);

/// The 8 bits of the chosen column (default 4, "almost in the middle")
/// within the given block, top to bottom.
EdgeColumn extract_column(const EdgeMap& edge_map, int block_index, int column_offset = 4);

/// Edge column that the given carrier block must embed.
EdgeColumn payload_for_block(const EdgeMap& edge_map, const AssignmentPermutation& assignment,
                             int carrier_index, int column_offset = 4);

/// Write the edge map as a {0,255} PGM for inspection.
void write_edge_map_pgm(const EdgeMap& edge_map, const std::string& path);

} // namespace esl
