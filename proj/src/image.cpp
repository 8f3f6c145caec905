#include "esl/image.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "esl/error.hpp"

namespace esl {

BlockGrid grid_for(int width, int height) {
    if (width <= 0 || height <= 0 || width % 8 != 0 || height % 8 != 0)
        throw ArgumentError("grid_for: dimensions must be positive multiples of 8, got " +
                            std::to_string(width) + "x" + std::to_string(height));
    return BlockGrid{width / 8, height / 8};
}

Image make_image(int width, int height, std::vector<std::uint8_t> pixels) {
    if (width <= 0 || height <= 0)
        throw ArgumentError("make_image: non-positive dimensions");
    if (width % 8 != 0 || height % 8 != 0)
        throw ArgumentError("make_image: dimensions must be multiples of 8");
    if (pixels.size() != std::size_t(width) * std::size_t(height))
        throw ArgumentError("make_image: pixel count does not match dimensions");
    Image img;
    img.width = width;
    img.height = height;
    img.orig_width = width;
    img.orig_height = height;
    img.pixels = std::move(pixels);
    return img;
}

Image pad_to_blocks(int width, int height, const std::vector<std::uint8_t>& pixels) {
    if (width <= 0 || height <= 0)
        throw ArgumentError("pad_to_blocks: non-positive dimensions");
    if (pixels.size() != std::size_t(width) * std::size_t(height))
        throw ArgumentError("pad_to_blocks: pixel count does not match dimensions");

    const int padded_w = (width + 7) / 8 * 8;
    const int padded_h = (height + 7) / 8 * 8;

    Image img;
    img.width = padded_w;
    img.height = padded_h;
    img.orig_width = width;
    img.orig_height = height;
    img.pixels.resize(std::size_t(padded_w) * padded_h);
    for (int y = 0; y < padded_h; ++y) {
        const int sy = std::min(y, height - 1);
        for (int x = 0; x < padded_w; ++x) {
            const int sx = std::min(x, width - 1);
            img.pixels[std::size_t(y) * padded_w + x] = pixels[std::size_t(sy) * width + sx];
        }
    }
    return img;
}

Image crop_to_original(const Image& image) {
    if (!image.padded())
        return image;
    Image out;
    out.width = out.orig_width = image.orig_width;
    out.height = out.orig_height = image.orig_height;
    out.pixels.resize(std::size_t(out.width) * out.height);
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            out.pixels[std::size_t(y) * out.width + x] = image.at(x, y);
    return out;
}

namespace {

// Tokenizer for the PGM header: skips whitespace and '#' comments, tracks
// the byte offset for error messages.
struct PgmCursor {
    const std::vector<std::uint8_t>& data;
    std::size_t pos = 0;
    const std::string& origin;

    [[noreturn]] void fail(const std::string& what) const {
        throw FormatError(origin + ": PGM parse error at byte " + std::to_string(pos) + ": " + what);
    }

    bool eof() const { return pos >= data.size(); }

    void skip_space_and_comments() {
        while (!eof()) {
            const char c = char(data[pos]);
            if (c == '#') {
                while (!eof() && data[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
    }

    long next_int(const char* field) {
        skip_space_and_comments();
        if (eof()) fail(std::string("unexpected end of file reading ") + field);
        if (!std::isdigit(data[pos])) fail(std::string("expected digit for ") + field);
        long value = 0;
        while (!eof() && std::isdigit(data[pos])) {
            value = value * 10 + (data[pos] - '0');
            if (value > 1'000'000'000L) fail(std::string("value out of range for ") + field);
            ++pos;
        }
        return value;
    }
};

} // namespace

Image parse_pgm(const std::vector<std::uint8_t>& data, const std::string& origin) {
    PgmCursor cur{data, 0, origin};
    if (data.size() < 2) cur.fail("file too short for magic");
    if (data[0] != 'P' || (data[1] != '5' && data[1] != '2'))
        cur.fail("magic is not P5 or P2");
    const bool binary = data[1] == '5';
    cur.pos = 2;

    const long width = cur.next_int("width");
    const long height = cur.next_int("height");
    const long maxval = cur.next_int("maxval");
    if (width <= 0 || height <= 0) cur.fail("non-positive dimensions");
    if (maxval != 255)
        throw FormatError(origin + ": unsupported PGM maxval " + std::to_string(maxval) +
                          " (only 255 is supported)");

    const std::size_t count = std::size_t(width) * std::size_t(height);
    std::vector<std::uint8_t> pixels(count);
    if (binary) {
        // Exactly one whitespace byte separates the header from the raster.
        if (cur.eof() || !std::isspace(static_cast<unsigned char>(data[cur.pos])))
            cur.fail("missing whitespace before raster data");
        ++cur.pos;
        if (data.size() - cur.pos < count)
            cur.fail("raster data truncated");
        std::copy_n(data.begin() + long(cur.pos), count, pixels.begin());
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const long v = cur.next_int("pixel");
            if (v > 255) cur.fail("pixel value exceeds maxval");
            pixels[i] = std::uint8_t(v);
        }
    }
    return pad_to_blocks(int(width), int(height), pixels);
}

Image read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::vector<std::uint8_t> data{std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>()};
    if (in.bad())
        throw IoError("read failure on '" + path + "'");
    return parse_pgm(data, path);
}

void write_pgm(const Image& image, const std::string& path) {
    if (image.pixels.size() != std::size_t(image.width) * image.height)
        throw ArgumentError("write_pgm: invalid image");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << "P5\n" << image.orig_width << " " << image.orig_height << "\n255\n";
    for (int y = 0; y < image.orig_height; ++y)
        out.write(reinterpret_cast<const char*>(image.pixels.data() + std::size_t(y) * image.width),
                  image.orig_width);
    out.flush();
    if (!out)
        throw IoError("write failure on '" + path + "'");
}

SignedImage level_shift_forward(const Image& image) {
    SignedImage out;
    out.width = image.width;
    out.height = image.height;
    out.samples.resize(image.pixels.size());
    for (std::size_t i = 0; i < image.pixels.size(); ++i)
        out.samples[i] = std::int16_t(int(image.pixels[i]) - 128);
    return out;
}

Image level_shift_inverse(const SignedImage& shifted, int orig_width, int orig_height) {
    Image out;
    out.width = shifted.width;
    out.height = shifted.height;
    out.orig_width = orig_width;
    out.orig_height = orig_height;
    out.pixels.resize(shifted.samples.size());
    for (std::size_t i = 0; i < shifted.samples.size(); ++i) {
        const int v = int(shifted.samples[i]) + 128;
        out.pixels[i] = std::uint8_t(std::clamp(v, 0, 255));
    }
    return out;
}

std::vector<Block> partition(const SignedImage& image) {
    const BlockGrid grid = grid_for(image.width, image.height);
    std::vector<Block> blocks(std::size_t(grid.count()));
    for (int by = 0; by < grid.blocks_y; ++by) {
        for (int bx = 0; bx < grid.blocks_x; ++bx) {
            Block& b = blocks[std::size_t(grid.index(by, bx))];
            b.block_row = by;
            b.block_col = bx;
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c)
                    b.at(r, c) = image.at(bx * 8 + c, by * 8 + r);
        }
    }
    return blocks;
}

SignedImage assemble(const std::vector<Block>& blocks, int width, int height) {
    const BlockGrid grid = grid_for(width, height);
    if (blocks.size() != std::size_t(grid.count()))
        throw ArgumentError("assemble: block count does not match dimensions");
    SignedImage out;
    out.width = width;
    out.height = height;
    out.samples.resize(std::size_t(width) * height);
    for (const Block& b : blocks)
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c)
                out.samples[std::size_t(b.block_row * 8 + r) * width + b.block_col * 8 + c] =
                    b.at(r, c);
    return out;
}

} // namespace esl
