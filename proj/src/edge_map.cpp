#include "esl/edge_map.hpp"

#include <cmath>
#include <string>

#include "esl/error.hpp"

namespace esl {

AssignmentPermutation::AssignmentPermutation(int block_count)
    : block_count_(block_count), shift_(block_count / 2) {
    if (block_count < 2)
        throw ArgumentError("AssignmentPermutation: need at least 2 blocks, got " +
                            std::to_string(block_count) +
                            " (a block may not carry its own edge column)");
}

int AssignmentPermutation::carrier_of(int block_index) const {
    if (block_index < 0 || block_index >= block_count_)
        throw ArgumentError("carrier_of: block index out of range");
    return (block_index + shift_) % block_count_;
}

int AssignmentPermutation::source_of(int carrier_index) const {
    if (carrier_index < 0 || carrier_index >= block_count_)
        throw ArgumentError("source_of: carrier index out of range");
    return (carrier_index + block_count_ - shift_) % block_count_;
}

namespace {

// Mirror-at-edge index reflection: -1 -> 0, n -> n-1.
inline int reflect(int i, int n) {
    if (i < 0) return -i - 1;
    if (i >= n) return 2 * n - 1 - i;
    return i;
}

} // namespace

EdgeMap detect_edges(const Image& image, double threshold) {
    if (!(threshold > 0.0) || threshold > 1.0)
        throw ArgumentError("detect_edges: threshold must be in (0, 1], got " +
                            std::to_string(threshold));

    const int w = image.width;
    const int h = image.height;
    std::vector<double> magnitude(std::size_t(w) * h);
    double max_magnitude = 0.0;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            // 3x3 neighborhood with reflected borders.
            int p[3][3];
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    p[dy + 1][dx + 1] = image.at(reflect(x + dx, w), reflect(y + dy, h));

            const int gx = (p[0][2] + 2 * p[1][2] + p[2][2]) - (p[0][0] + 2 * p[1][0] + p[2][0]);
            const int gy = (p[2][0] + 2 * p[2][1] + p[2][2]) - (p[0][0] + 2 * p[0][1] + p[0][2]);
            const double mag = std::sqrt(double(gx) * gx + double(gy) * gy);
            magnitude[std::size_t(y) * w + x] = mag;
            if (mag > max_magnitude) max_magnitude = mag;
        }
    }

    EdgeMap map;
    map.width = w;
    map.height = h;
    map.bits.resize(magnitude.size());
    if (max_magnitude > 0.0) {
        const double cut = threshold * max_magnitude;
        for (std::size_t i = 0; i < magnitude.size(); ++i)
            map.bits[i] = magnitude[i] >= cut ? 1 : 0;
    }
    // max magnitude 0 (constant image): leave everything non-edge.
    return map;
}

EdgeColumn extract_column(const EdgeMap& edge_map, int block_index, int column_offset) {
    const BlockGrid grid = grid_for(edge_map.width, edge_map.height);
    if (block_index < 0 || block_index >= grid.count())
        throw ArgumentError("extract_column: block index " + std::to_string(block_index) +
                            " out of range for " + std::to_string(grid.count()) + " blocks");
    if (column_offset < 0 || column_offset > 7)
        throw ArgumentError("extract_column: column offset must be in 0..7");

    const int x = grid.col_of(block_index) * 8 + column_offset;
    const int y0 = grid.row_of(block_index) * 8;
    EdgeColumn col;
    col.source_block = block_index;
    for (int r = 0; r < 8; ++r)
        col.bits[std::size_t(r)] = edge_map.at(x, y0 + r);
    return col;
}

EdgeColumn payload_for_block(const EdgeMap& edge_map, const AssignmentPermutation& assignment,
                             int carrier_index, int column_offset) {
    return extract_column(edge_map, assignment.source_of(carrier_index), column_offset);
}

void write_edge_map_pgm(const EdgeMap& edge_map, const std::string& path) {
    Image img;
    img.width = img.orig_width = edge_map.width;
    img.height = img.orig_height = edge_map.height;
    img.pixels.resize(edge_map.bits.size());
    for (std::size_t i = 0; i < edge_map.bits.size(); ++i)
        img.pixels[i] = edge_map.bits[i] ? 255 : 0;
    write_pgm(img, path);
}

} // namespace esl
