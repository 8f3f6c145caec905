#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "esl/image.hpp"
#include "esl/qim.hpp"

namespace esl {

/// Real-valued 8x8 DCT coefficients, raster order (row u, col v).
struct DctBlock {
    std::array<double, 64> coefficients{};

    double at(int u, int v) const { return coefficients[std::size_t(u) * 8 + v]; }
    double& at(int u, int v) { return coefficients[std::size_t(u) * 8 + v]; }
};

/// The baseline JPEG luminance quantization table, raster order.
const std::array<int, 64>& jpeg_luminance_quant();

/// Orthonormal 2-D DCT-II of a level-shifted block. A constant block of
/// value c transforms to DC = 8c with zero AC.
DctBlock forward_dct(const Block& block);

/// Adjoint of forward_dct; exact inverse up to floating tolerance.
Block inverse_dct(const DctBlock& dct, int block_row = 0, int block_col = 0);

/// Elementwise coefficient / quantizer. No rounding here; rounding is the
/// watermarking step (parity or standard) and lives in qim.
RatioBlock quantize(const DctBlock& dct, const std::array<int, 64>& q = jpeg_luminance_quant());

/// Elementwise level * quantizer.
DctBlock dequantize(const QuantizedBlock& levels,
                    const std::array<int, 64>& q = jpeg_luminance_quant());

/// Standard JPEG zigzag scan and its inverse.
std::array<int, 64> zigzag(const QuantizedBlock& levels);
QuantizedBlock inverse_zigzag(const std::array<int, 64>& sequence);

/// Entropy-code one block with the baseline JPEG luminance Huffman tables.
/// The DC level is coded as an absolute category + magnitude bits (not
/// differentially), so every payload decodes with zero context. Payloads are
/// padded with 1-bits to a byte boundary.
/// Valid magnitude ranges: |DC| < 2048, |AC| < 1024; violations throw
/// EncodeError naming the position.
std::vector<std::uint8_t> encode_block(const QuantizedBlock& levels);

/// Exact inverse of encode_block. Throws DecodeError on truncated payloads,
/// undefined Huffman prefixes, coefficient overruns, or trailing garbage.
QuantizedBlock decode_block(const std::vector<std::uint8_t>& payload);

/// One independently decodable per-block packet.
struct Packet {
    std::uint32_t block_index = 0;
    std::vector<std::uint8_t> payload;
};

/// Stream header. The magic's trailing digit is the format version.
struct StreamHeader {
    static constexpr std::array<char, 4> kMagic = {'E', 'S', 'L', '1'};
    static constexpr std::uint8_t kAssignmentHalfGridShift = 0;

    std::uint16_t width = 0;        // padded, multiple of 8
    std::uint16_t height = 0;       // padded, multiple of 8
    std::uint16_t orig_width = 0;   // pre-padding extent
    std::uint16_t orig_height = 0;  // pre-padding extent
    std::uint8_t column_offset = 4;
    std::uint8_t assignment_scheme = kAssignmentHalfGridShift;
    float edge_threshold = 0.25f;

    BlockGrid grid() const { return BlockGrid{width / 8, height / 8}; }
};

/// Header plus per-block packets. A freshly embedded stream has one packet
/// per block in raster order; a post-channel stream holds the surviving
/// subset, still ordered by block index.
struct PacketStream {
    StreamHeader header;
    std::vector<Packet> packets;
};

/// Fixed-width little-endian serialization (the .esl file format).
std::vector<std::uint8_t> serialize_stream(const PacketStream& stream);
PacketStream deserialize_stream(const std::vector<std::uint8_t>& bytes);

void write_stream(const PacketStream& stream, const std::string& path);
PacketStream read_stream(const std::string& path);

} // namespace esl
