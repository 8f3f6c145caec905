#include "esl/codec.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

#include "esl/error.hpp"

namespace esl {

// ---------------------------------------------------------------------------
// Transform and quantization
// ---------------------------------------------------------------------------

const std::array<int, 64>& jpeg_luminance_quant() {
    static const std::array<int, 64> q = {
        16, 11, 10, 16, 24,  40,  51,  61,  //
        12, 12, 14, 19, 26,  58,  60,  55,  //
        14, 13, 16, 24, 40,  57,  69,  56,  //
        14, 17, 22, 29, 51,  87,  80,  62,  //
        18, 22, 37, 56, 68,  109, 103, 77,  //
        24, 35, 55, 64, 81,  104, 113, 92,  //
        49, 64, 78, 87, 103, 121, 120, 101, //
        72, 92, 95, 98, 112, 100, 103, 99,  //
    };
    return q;
}

namespace {

// Orthonormal DCT-II basis: basis[k][n] = a_k * cos((2n+1) k pi / 16),
// a_0 = sqrt(1/8), a_k = 1/2 otherwise.
const std::array<std::array<double, 8>, 8>& dct_basis() {
    static const auto basis = [] {
        std::array<std::array<double, 8>, 8> b{};
        for (int k = 0; k < 8; ++k) {
            const double a = k == 0 ? std::sqrt(1.0 / 8.0) : 0.5;
            for (int n = 0; n < 8; ++n)
                b[std::size_t(k)][std::size_t(n)] =
                    a * std::cos((2 * n + 1) * k * std::numbers::pi / 16.0);
        }
        return b;
    }();
    return basis;
}

} // namespace

DctBlock forward_dct(const Block& block) {
    const auto& basis = dct_basis();
    // Separable: rows first, then columns.
    double tmp[8][8];
    for (int r = 0; r < 8; ++r)
        for (int v = 0; v < 8; ++v) {
            double s = 0.0;
            for (int c = 0; c < 8; ++c) s += basis[std::size_t(v)][std::size_t(c)] * block.at(r, c);
            tmp[r][v] = s;
        }
    DctBlock out;
    for (int u = 0; u < 8; ++u)
        for (int v = 0; v < 8; ++v) {
            double s = 0.0;
            for (int r = 0; r < 8; ++r) s += basis[std::size_t(u)][std::size_t(r)] * tmp[r][v];
            out.at(u, v) = s;
        }
    return out;
}

Block inverse_dct(const DctBlock& dct, int block_row, int block_col) {
    const auto& basis = dct_basis();
    double tmp[8][8];
    for (int u = 0; u < 8; ++u)
        for (int c = 0; c < 8; ++c) {
            double s = 0.0;
            for (int v = 0; v < 8; ++v) s += basis[std::size_t(v)][std::size_t(c)] * dct.at(u, v);
            tmp[u][c] = s;
        }
    Block out;
    out.block_row = block_row;
    out.block_col = block_col;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            double s = 0.0;
            for (int u = 0; u < 8; ++u) s += basis[std::size_t(u)][std::size_t(r)] * tmp[u][c];
            // Halves away from zero, matching the standard rounding step.
            out.at(r, c) = std::int16_t(std::lround(s));
        }
    return out;
}

RatioBlock quantize(const DctBlock& dct, const std::array<int, 64>& q) {
    RatioBlock out;
    for (int i = 0; i < 64; ++i)
        out.values[std::size_t(i)] = dct.coefficients[std::size_t(i)] / q[std::size_t(i)];
    return out;
}

DctBlock dequantize(const QuantizedBlock& levels, const std::array<int, 64>& q) {
    DctBlock out;
    for (int i = 0; i < 64; ++i)
        out.coefficients[std::size_t(i)] =
            double(levels.levels[std::size_t(i)]) * q[std::size_t(i)];
    return out;
}

// ---------------------------------------------------------------------------
// Zigzag
// ---------------------------------------------------------------------------

namespace {

// zigzag_order[i] = raster index of the i-th zigzag element.
constexpr std::array<int, 64> kZigzagOrder = {
    0,  1,  8,  16, 9,  2,  3,  10, //
    17, 24, 32, 25, 18, 11, 4,  5,  //
    12, 19, 26, 33, 40, 48, 41, 34, //
    27, 20, 13, 6,  7,  14, 21, 28, //
    35, 42, 49, 56, 57, 50, 43, 36, //
    29, 22, 15, 23, 30, 37, 44, 51, //
    58, 59, 52, 45, 38, 31, 39, 46, //
    53, 60, 61, 54, 47, 55, 62, 63, //
};

} // namespace

std::array<int, 64> zigzag(const QuantizedBlock& levels) {
    std::array<int, 64> out{};
    for (int i = 0; i < 64; ++i) out[std::size_t(i)] = levels.levels[std::size_t(kZigzagOrder[std::size_t(i)])];
    return out;
}

QuantizedBlock inverse_zigzag(const std::array<int, 64>& sequence) {
    QuantizedBlock out;
    for (int i = 0; i < 64; ++i) out.levels[std::size_t(kZigzagOrder[std::size_t(i)])] = sequence[std::size_t(i)];
    return out;
}

// ---------------------------------------------------------------------------
// Huffman coding (baseline JPEG luminance tables)
// ---------------------------------------------------------------------------

namespace {

// Code counts per length 1..16 followed by the symbol list, as in the
// baseline standard. Codes are rebuilt canonically from these.
struct HuffSpec {
    std::array<std::uint8_t, 17> bits; // bits[L] = number of codes of length L
    std::vector<std::uint8_t> values;
};

const HuffSpec& dc_spec() {
    static const HuffSpec spec = {
        {0, 0, 1, 5, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0},
        {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11},
    };
    return spec;
}

const HuffSpec& ac_spec() {
    static const HuffSpec spec = {
        {0, 0, 2, 1, 3, 3, 2, 4, 3, 5, 5, 4, 4, 0, 0, 1, 0x7D},
        {0x01, 0x02, 0x03, 0x00, 0x04, 0x11, 0x05, 0x12, 0x21, 0x31, 0x41, 0x06, 0x13, 0x51,
         0x61, 0x07, 0x22, 0x71, 0x14, 0x32, 0x81, 0x91, 0xA1, 0x08, 0x23, 0x42, 0xB1, 0xC1,
         0x15, 0x52, 0xD1, 0xF0, 0x24, 0x33, 0x62, 0x72, 0x82, 0x09, 0x0A, 0x16, 0x17, 0x18,
         0x19, 0x1A, 0x25, 0x26, 0x27, 0x28, 0x29, 0x2A, 0x34, 0x35, 0x36, 0x37, 0x38, 0x39,
         0x3A, 0x43, 0x44, 0x45, 0x46, 0x47, 0x48, 0x49, 0x4A, 0x53, 0x54, 0x55, 0x56, 0x57,
         0x58, 0x59, 0x5A, 0x63, 0x64, 0x65, 0x66, 0x67, 0x68, 0x69, 0x6A, 0x73, 0x74, 0x75,
         0x76, 0x77, 0x78, 0x79, 0x7A, 0x83, 0x84, 0x85, 0x86, 0x87, 0x88, 0x89, 0x8A, 0x92,
         0x93, 0x94, 0x95, 0x96, 0x97, 0x98, 0x99, 0x9A, 0xA2, 0xA3, 0xA4, 0xA5, 0xA6, 0xA7,
         0xA8, 0xA9, 0xAA, 0xB2, 0xB3, 0xB4, 0xB5, 0xB6, 0xB7, 0xB8, 0xB9, 0xBA, 0xC2, 0xC3,
         0xC4, 0xC5, 0xC6, 0xC7, 0xC8, 0xC9, 0xCA, 0xD2, 0xD3, 0xD4, 0xD5, 0xD6, 0xD7, 0xD8,
         0xD9, 0xDA, 0xE1, 0xE2, 0xE3, 0xE4, 0xE5, 0xE6, 0xE7, 0xE8, 0xE9, 0xEA, 0xF1, 0xF2,
         0xF3, 0xF4, 0xF5, 0xF6, 0xF7, 0xF8, 0xF9, 0xFA},
    };
    return spec;
}

struct HuffCode {
    std::uint16_t code = 0;
    std::uint8_t length = 0; // 0 = symbol not in table
};

// Encoder side: symbol -> canonical code.
struct HuffEncoder {
    std::array<HuffCode, 256> codes{};
};

// Decoder side: standard mincode/maxcode/valptr walk per code length.
struct HuffDecoder {
    std::array<std::int32_t, 17> mincode{};
    std::array<std::int32_t, 17> maxcode{}; // -1 where no codes of that length
    std::array<std::int32_t, 17> valptr{};
    std::vector<std::uint8_t> values;
};

HuffEncoder build_encoder(const HuffSpec& spec) {
    HuffEncoder enc;
    std::uint16_t code = 0;
    std::size_t k = 0;
    for (int length = 1; length <= 16; ++length) {
        for (int i = 0; i < spec.bits[std::size_t(length)]; ++i) {
            enc.codes[spec.values[k]] = {code, std::uint8_t(length)};
            ++code;
            ++k;
        }
        code = std::uint16_t(code << 1);
    }
    return enc;
}

HuffDecoder build_decoder(const HuffSpec& spec) {
    HuffDecoder dec;
    dec.values = spec.values;
    std::int32_t code = 0;
    std::int32_t k = 0;
    for (int length = 1; length <= 16; ++length) {
        const int n = spec.bits[std::size_t(length)];
        if (n == 0) {
            dec.maxcode[std::size_t(length)] = -1;
        } else {
            dec.valptr[std::size_t(length)] = k;
            dec.mincode[std::size_t(length)] = code;
            code += n;
            k += n;
            dec.maxcode[std::size_t(length)] = code - 1;
        }
        code <<= 1;
    }
    return dec;
}

const HuffEncoder& dc_encoder() { static const HuffEncoder e = build_encoder(dc_spec()); return e; }
const HuffEncoder& ac_encoder() { static const HuffEncoder e = build_encoder(ac_spec()); return e; }
const HuffDecoder& dc_decoder() { static const HuffDecoder d = build_decoder(dc_spec()); return d; }
const HuffDecoder& ac_decoder() { static const HuffDecoder d = build_decoder(ac_spec()); return d; }

class BitWriter {
public:
    void put(std::uint32_t bits, int count) {
        for (int i = count - 1; i >= 0; --i) {
            acc_ = std::uint8_t(acc_ << 1 | (bits >> i & 1u));
            if (++filled_ == 8) {
                bytes_.push_back(acc_);
                acc_ = 0;
                filled_ = 0;
            }
        }
    }

    void put_code(const HuffCode& code) { put(code.code, code.length); }

    // Pad the final partial byte with 1-bits.
    std::vector<std::uint8_t> finish() {
        if (filled_ > 0) {
            acc_ = std::uint8_t(acc_ << (8 - filled_) | ((1u << (8 - filled_)) - 1u));
            bytes_.push_back(acc_);
            acc_ = 0;
            filled_ = 0;
        }
        return std::move(bytes_);
    }

private:
    std::vector<std::uint8_t> bytes_;
    std::uint8_t acc_ = 0;
    int filled_ = 0;
};

class BitReader {
public:
    explicit BitReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    int next_bit() {
        if (pos_ >= bytes_.size() * 8)
            throw DecodeError("packet payload truncated");
        const int bit = bytes_[pos_ / 8] >> (7 - pos_ % 8) & 1;
        ++pos_;
        return bit;
    }

    std::uint32_t next_bits(int count) {
        std::uint32_t v = 0;
        for (int i = 0; i < count; ++i) v = v << 1 | std::uint32_t(next_bit());
        return v;
    }

    std::uint8_t next_symbol(const HuffDecoder& table) {
        std::int32_t code = 0;
        for (int length = 1; length <= 16; ++length) {
            code = code << 1 | next_bit();
            if (table.maxcode[std::size_t(length)] >= 0 && code <= table.maxcode[std::size_t(length)])
                return table.values[std::size_t(table.valptr[std::size_t(length)] + code -
                                                table.mincode[std::size_t(length)])];
        }
        throw DecodeError("undefined Huffman prefix in packet payload");
    }

    std::size_t bits_remaining() const { return bytes_.size() * 8 - pos_; }

    // Padding must be a partial byte of 1-bits; anything else is garbage.
    void expect_only_padding() {
        if (bits_remaining() >= 8)
            throw DecodeError("trailing bytes after end of block");
        while (bits_remaining() > 0)
            if (next_bit() != 1)
                throw DecodeError("nonzero-padded tail after end of block");
    }

private:
    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

// Size category: number of bits needed for |v|; 0 only for v == 0.
int category_of(int v) {
    int a = std::abs(v);
    int n = 0;
    while (a > 0) {
        a >>= 1;
        ++n;
    }
    return n;
}

// Magnitude bits: v itself for positive values, ones'-complement style
// (v - 1) & mask for negative ones.
std::uint32_t magnitude_bits(int v, int category) {
    if (v >= 0) return std::uint32_t(v);
    return std::uint32_t(v - 1) & ((1u << category) - 1u);
}

int decode_magnitude(std::uint32_t bits, int category) {
    if (category == 0) return 0;
    if (bits >> (category - 1) & 1u) return int(bits); // sign bit set: positive
    return int(bits) - (1 << category) + 1;
}

} // namespace

std::vector<std::uint8_t> encode_block(const QuantizedBlock& levels) {
    const std::array<int, 64> zz = zigzag(levels);
    BitWriter writer;

    // DC: absolute value with the DC table, no differential prediction.
    const int dc = zz[0];
    if (std::abs(dc) > 2047)
        throw EncodeError("DC level " + std::to_string(dc) + " out of range at position (1,1)");
    const int dc_cat = category_of(dc);
    writer.put_code(dc_encoder().codes[std::size_t(dc_cat)]);
    writer.put(magnitude_bits(dc, dc_cat), dc_cat);

    // AC run-length symbols.
    int run = 0;
    for (int k = 1; k < 64; ++k) {
        const int v = zz[std::size_t(k)];
        if (v == 0) {
            ++run;
            continue;
        }
        if (std::abs(v) > 1023)
            throw EncodeError("AC level " + std::to_string(v) + " out of range at zigzag index " +
                              std::to_string(k));
        while (run > 15) {
            writer.put_code(ac_encoder().codes[0xF0]); // ZRL: sixteen zeros
            run -= 16;
        }
        const int cat = category_of(v);
        writer.put_code(ac_encoder().codes[std::size_t(run << 4 | cat)]);
        writer.put(magnitude_bits(v, cat), cat);
        run = 0;
    }
    if (run > 0)
        writer.put_code(ac_encoder().codes[0x00]); // EOB

    return writer.finish();
}

QuantizedBlock decode_block(const std::vector<std::uint8_t>& payload) {
    BitReader reader(payload);
    std::array<int, 64> zz{};

    const int dc_cat = reader.next_symbol(dc_decoder());
    if (dc_cat > 11)
        throw DecodeError("invalid DC category " + std::to_string(dc_cat));
    zz[0] = decode_magnitude(reader.next_bits(dc_cat), dc_cat);

    int k = 1;
    while (k < 64) {
        const std::uint8_t sym = reader.next_symbol(ac_decoder());
        if (sym == 0x00) break; // EOB: remaining coefficients are zero
        if (sym == 0xF0) {      // ZRL
            if (k + 16 > 64)
                throw DecodeError("zero run overruns the block");
            k += 16;
            continue;
        }
        const int run = sym >> 4;
        const int cat = sym & 0x0F;
        k += run;
        if (k > 63)
            throw DecodeError("coefficient index overruns the block");
        zz[std::size_t(k)] = decode_magnitude(reader.next_bits(cat), cat);
        ++k;
    }
    reader.expect_only_padding();
    return inverse_zigzag(zz);
}

// ---------------------------------------------------------------------------
// Stream serialization (.esl)
// ---------------------------------------------------------------------------

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(std::uint8_t(v & 0xFF));
    out.push_back(std::uint8_t(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t(v >> (8 * i) & 0xFF));
}

void put_f32(std::vector<std::uint8_t>& out, float v) {
    static_assert(sizeof(float) == 4);
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
}

struct ByteCursor {
    const std::vector<std::uint8_t>& data;
    std::size_t pos = 0;

    void need(std::size_t n, const char* what) const {
        if (data.size() - pos < n)
            throw FormatError(std::string("stream truncated reading ") + what);
    }
    std::uint8_t u8(const char* what) {
        need(1, what);
        return data[pos++];
    }
    std::uint16_t u16(const char* what) {
        need(2, what);
        std::uint16_t v = std::uint16_t(data[pos] | data[pos + 1] << 8);
        pos += 2;
        return v;
    }
    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = v << 8 | data[pos + std::size_t(i)];
        pos += 4;
        return v;
    }
    float f32(const char* what) {
        const std::uint32_t bits = u32(what);
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }
};

} // namespace

std::vector<std::uint8_t> serialize_stream(const PacketStream& stream) {
    const StreamHeader& h = stream.header;
    if (h.width == 0 || h.height == 0 || h.width % 8 != 0 || h.height % 8 != 0)
        throw ArgumentError("serialize_stream: header dimensions must be positive multiples of 8");
    if (h.orig_width == 0 || h.orig_height == 0 || h.orig_width > h.width ||
        h.orig_height > h.height)
        throw ArgumentError("serialize_stream: bad original extent in header");
    const std::size_t block_count = std::size_t(h.grid().count());
    if (stream.packets.size() > block_count)
        throw ArgumentError("serialize_stream: more packets than blocks");
    for (std::size_t i = 0; i < stream.packets.size(); ++i) {
        if (stream.packets[i].block_index >= block_count)
            throw ArgumentError("serialize_stream: packet block index out of range");
        if (i > 0 && stream.packets[i].block_index <= stream.packets[i - 1].block_index)
            throw ArgumentError("serialize_stream: packet indices must be strictly increasing");
    }

    std::vector<std::uint8_t> out;
    out.insert(out.end(), StreamHeader::kMagic.begin(), StreamHeader::kMagic.end());
    put_u16(out, h.width);
    put_u16(out, h.height);
    put_u16(out, h.orig_width);
    put_u16(out, h.orig_height);
    out.push_back(h.column_offset);
    out.push_back(h.assignment_scheme);
    put_f32(out, h.edge_threshold);
    put_u32(out, std::uint32_t(stream.packets.size()));
    for (const Packet& p : stream.packets) {
        put_u32(out, p.block_index);
        put_u32(out, std::uint32_t(p.payload.size()));
        out.insert(out.end(), p.payload.begin(), p.payload.end());
    }
    return out;
}

PacketStream deserialize_stream(const std::vector<std::uint8_t>& bytes) {
    ByteCursor cur{bytes, 0};
    cur.need(4, "magic");
    if (!std::equal(StreamHeader::kMagic.begin(), StreamHeader::kMagic.end(), bytes.begin()))
        throw FormatError("not an ESL stream (bad magic/version)");
    cur.pos = 4;

    PacketStream stream;
    StreamHeader& h = stream.header;
    h.width = cur.u16("width");
    h.height = cur.u16("height");
    h.orig_width = cur.u16("original width");
    h.orig_height = cur.u16("original height");
    h.column_offset = cur.u8("column offset");
    h.assignment_scheme = cur.u8("assignment scheme");
    h.edge_threshold = cur.f32("edge threshold");

    if (h.width == 0 || h.height == 0 || h.width % 8 != 0 || h.height % 8 != 0)
        throw FormatError("stream header dimensions must be positive multiples of 8");
    if (h.orig_width == 0 || h.orig_height == 0 || h.orig_width > h.width ||
        h.orig_height > h.height)
        throw FormatError("stream header original extent is inconsistent");
    if (h.column_offset > 7)
        throw FormatError("stream header column offset out of range");
    if (h.assignment_scheme != StreamHeader::kAssignmentHalfGridShift)
        throw FormatError("unknown assignment scheme id " + std::to_string(h.assignment_scheme));

    const std::uint32_t block_count = std::uint32_t(h.grid().count());
    const std::uint32_t packet_count = cur.u32("packet count");
    if (packet_count > block_count)
        throw FormatError("packet count " + std::to_string(packet_count) +
                          " exceeds block count " + std::to_string(block_count));

    stream.packets.reserve(packet_count);
    std::int64_t last_index = -1;
    for (std::uint32_t i = 0; i < packet_count; ++i) {
        Packet p;
        p.block_index = cur.u32("packet block index");
        if (p.block_index >= block_count)
            throw FormatError("packet block index out of range");
        if (std::int64_t(p.block_index) <= last_index)
            throw FormatError("packet block indices must be strictly increasing");
        last_index = p.block_index;
        const std::uint32_t len = cur.u32("packet payload length");
        cur.need(len, "packet payload");
        p.payload.assign(bytes.begin() + long(cur.pos), bytes.begin() + long(cur.pos + len));
        cur.pos += len;
        stream.packets.push_back(std::move(p));
    }
    if (cur.pos != bytes.size())
        throw FormatError("trailing bytes after last packet");
    return stream;
}

void write_stream(const PacketStream& stream, const std::string& path) {
    const std::vector<std::uint8_t> bytes = serialize_stream(stream);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), long(bytes.size()));
    out.flush();
    if (!out)
        throw IoError("write failure on '" + path + "'");
}

PacketStream read_stream(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>()};
    if (in.bad())
        throw IoError("read failure on '" + path + "'");
    return deserialize_stream(bytes);
}

} // namespace esl
