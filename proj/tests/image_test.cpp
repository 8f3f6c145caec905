#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "esl/error.hpp"
#include "esl/image.hpp"

namespace {

std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("esl_image_test_" + name)).string();
}

std::vector<std::uint8_t> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

esl::Image ramp_image(int width, int height) {
    std::vector<std::uint8_t> pixels(std::size_t(width) * height);
    for (std::size_t i = 0; i < pixels.size(); ++i)
        pixels[i] = std::uint8_t((i * 7 + 13) % 256);
    return esl::pad_to_blocks(width, height, pixels);
}

} // namespace

TEST_CASE("image construction validates its invariants") {
    CHECK_THROWS_AS(esl::make_image(0, 8, {}), esl::ArgumentError);
    CHECK_THROWS_AS(esl::make_image(12, 8, std::vector<std::uint8_t>(96)), esl::ArgumentError);
    CHECK_THROWS_AS(esl::make_image(8, 8, std::vector<std::uint8_t>(63)), esl::ArgumentError);
    const esl::Image ok = esl::make_image(8, 8, std::vector<std::uint8_t>(64, 7));
    CHECK(ok.width == 8);
    CHECK(ok.orig_width == 8);
    CHECK(ok.at(3, 5) == 7);
}

TEST_CASE("grid geometry follows the raster convention") {
    const esl::BlockGrid grid = esl::grid_for(32, 16);
    CHECK(grid.blocks_x == 4);
    CHECK(grid.blocks_y == 2);
    CHECK(grid.count() == 8);
    CHECK(grid.index(1, 2) == 6);
    CHECK(grid.row_of(6) == 1);
    CHECK(grid.col_of(6) == 2);
    CHECK_THROWS_AS(esl::grid_for(12, 8), esl::ArgumentError);
}

TEST_CASE("level shift subtracts 128 and the inverse clamps") {
    esl::Image image = esl::make_image(8, 8, std::vector<std::uint8_t>(64, 128));
    image.pixels[0] = 0;
    image.pixels[1] = 255;
    const esl::SignedImage shifted = esl::level_shift_forward(image);
    CHECK(shifted.at(0, 0) == -128);
    CHECK(shifted.at(1, 0) == 127);
    CHECK(shifted.at(2, 0) == 0);

    esl::SignedImage wild = shifted;
    wild.samples[0] = 200; // 200 + 128 = 328, clamps to 255
    wild.samples[1] = -300;
    const esl::Image back = esl::level_shift_inverse(wild, 8, 8);
    CHECK(back.at(0, 0) == 255);
    CHECK(back.at(1, 0) == 0);
    CHECK(back.at(2, 0) == 128);
}

TEST_CASE("level shift round-trips every 8-bit value") {
    std::vector<std::uint8_t> pixels(64);
    for (int i = 0; i < 64; ++i)
        pixels[std::size_t(i)] = std::uint8_t(i * 4 + 3);
    const esl::Image image = esl::make_image(8, 8, pixels);
    const esl::Image back = esl::level_shift_inverse(esl::level_shift_forward(image), 8, 8);
    CHECK(back.pixels == image.pixels);
}

TEST_CASE("partition yields raster-ordered tagged blocks and assemble inverts it") {
    const esl::Image image = ramp_image(16, 16);
    const esl::SignedImage shifted = esl::level_shift_forward(image);
    const std::vector<esl::Block> blocks = esl::partition(shifted);
    REQUIRE(blocks.size() == 4);
    CHECK(blocks[1].block_row == 0);
    CHECK(blocks[1].block_col == 1);
    CHECK(blocks[2].block_row == 1);
    CHECK(blocks[2].block_col == 0);
    CHECK(blocks[1].at(0, 0) == shifted.at(8, 0));
    CHECK(blocks[3].at(7, 7) == shifted.at(15, 15));

    const esl::SignedImage again = esl::assemble(blocks, 16, 16);
    CHECK(again.samples == shifted.samples);
}

TEST_CASE("a single-block image partitions into one block") {
    const esl::Image image = ramp_image(8, 8);
    CHECK(esl::partition(esl::level_shift_forward(image)).size() == 1);
}

TEST_CASE("padding replicates the last row and column and cropping undoes it") {
    std::vector<std::uint8_t> pixels(10 * 6);
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 10; ++x)
            pixels[std::size_t(y) * 10 + x] = std::uint8_t(10 * y + x);
    const esl::Image padded = esl::pad_to_blocks(10, 6, pixels);
    CHECK(padded.width == 16);
    CHECK(padded.height == 8);
    CHECK(padded.orig_width == 10);
    CHECK(padded.orig_height == 6);
    CHECK(padded.at(9, 5) == 59);
    CHECK(padded.at(15, 5) == 59);  // replicated column
    CHECK(padded.at(9, 7) == 59);   // replicated row
    CHECK(padded.at(15, 7) == 59);  // replicated corner
    CHECK(padded.at(12, 2) == 29);

    const esl::Image cropped = esl::crop_to_original(padded);
    CHECK(cropped.width == 10);
    CHECK(cropped.height == 6);
    CHECK(cropped.pixels == pixels);
}

TEST_CASE("PGM write then read is bit-exact") {
    const esl::Image image = ramp_image(24, 16);
    const std::string path = tmp_path("roundtrip.pgm");
    esl::write_pgm(image, path);
    const esl::Image back = esl::read_pgm(path);
    CHECK(back.width == image.width);
    CHECK(back.height == image.height);
    CHECK(back.pixels == image.pixels);
    std::filesystem::remove(path);
}

TEST_CASE("PGM writer declares the unpadded size and emits only those pixels") {
    const esl::Image image = esl::pad_to_blocks(2, 2, {10, 20, 30, 40});
    const std::string path = tmp_path("cropped.pgm");
    esl::write_pgm(image, path);
    const std::vector<std::uint8_t> bytes = slurp(path);
    const std::string header = "P5\n2 2\n255\n";
    REQUIRE(bytes.size() == header.size() + 4);
    CHECK(std::string(bytes.begin(), bytes.begin() + long(header.size())) == header);
    CHECK(bytes[header.size() + 0] == 10);
    CHECK(bytes[header.size() + 3] == 40);
    std::filesystem::remove(path);
}

TEST_CASE("ASCII and binary PGM encodings parse identically") {
    const std::string ascii = "P2\n# a comment\n4 2\n255\n1 2 3 4\n5 6 7 8\n";
    const std::vector<std::uint8_t> ascii_bytes(ascii.begin(), ascii.end());
    const esl::Image a = esl::parse_pgm(ascii_bytes, "ascii");

    std::string binary = "P5\n4 2\n255\n";
    for (int v = 1; v <= 8; ++v)
        binary.push_back(char(v));
    const std::vector<std::uint8_t> binary_bytes(binary.begin(), binary.end());
    const esl::Image b = esl::parse_pgm(binary_bytes, "binary");

    CHECK(a.pixels == b.pixels);
    CHECK(a.orig_width == 4);
    CHECK(a.orig_height == 2);
    CHECK(a.width == 8);
    CHECK(a.at(3, 1) == 8);
}

TEST_CASE("PGM parse failures name the byte offset") {
    const std::string truncated = "P5\n4 2\n255\n\x01\x02";
    const std::vector<std::uint8_t> bytes(truncated.begin(), truncated.end());
    CHECK_THROWS_WITH_AS(esl::parse_pgm(bytes, "short"),
                         doctest::Contains("byte"), esl::FormatError);

    const std::string bad_magic = "P6\n4 2\n255\n";
    CHECK_THROWS_AS(esl::parse_pgm({bad_magic.begin(), bad_magic.end()}, "magic"),
                    esl::FormatError);
}

TEST_CASE("only maxval 255 is supported") {
    const std::string pgm = "P2\n2 2\n100\n1 2 3 4\n";
    CHECK_THROWS_WITH_AS(esl::parse_pgm({pgm.begin(), pgm.end()}, "maxval"),
                         doctest::Contains("unsupported"), esl::FormatError);
}

TEST_CASE("write to an unwritable path raises an I/O error") {
    const esl::Image image = ramp_image(8, 8);
    CHECK_THROWS_AS(esl::write_pgm(image, "/nonexistent_dir_esl/x.pgm"), esl::IoError);
    CHECK_THROWS_AS(esl::read_pgm("/nonexistent_dir_esl/x.pgm"), esl::IoError);
}

TEST_CASE("random images survive the pad, write, read, crop cycle") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const int width = 1 + int(rng() % 40);
        const int height = 1 + int(rng() % 40);
        std::vector<std::uint8_t> pixels(std::size_t(width) * height);
        for (auto& p : pixels)
            p = std::uint8_t(rng() & 0xFF);
        const esl::Image image = esl::pad_to_blocks(width, height, pixels);
        const std::string path = tmp_path("cycle.pgm");
        esl::write_pgm(image, path);
        const esl::Image back = esl::read_pgm(path);
        CHECK(back.pixels == image.pixels);
        CHECK(back.orig_width == width);
        CHECK(back.orig_height == height);
        std::filesystem::remove(path);
    }
}
