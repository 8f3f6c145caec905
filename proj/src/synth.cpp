#include "esl/synth.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "esl/channel.hpp"
#include "esl/error.hpp"

namespace esl {

namespace {

constexpr double kTau = 6.283185307179586476925;

std::uint8_t to_pixel(double value) {
    return std::uint8_t(std::clamp<long>(std::lround(value), 0, 255));
}

} // namespace

Image synth_scene(int width, int height, std::uint64_t seed) {
    if (width <= 0 || height <= 0)
        throw ArgumentError("scene dimensions must be positive");

    SplitMix64 rng(seed);
    auto u = [&rng] { return rng.next_uniform(); };

    const double fx = 1.0 + 2.0 * u();
    const double fy = 1.0 + 2.0 * u();
    const double phase_x = kTau * u();
    const double phase_y = kTau * u();
    const double f_diag = 0.5 + 1.5 * u();
    const double phase_diag = kTau * u();

    struct Disk {
        double cx, cy, radius, shade;
    };
    Disk disks[2];
    for (int k = 0; k < 2; ++k) {
        disks[k].cx = width * (0.2 + 0.6 * u());
        disks[k].cy = height * (0.2 + 0.6 * u());
        disks[k].radius = std::min(width, height) * (0.10 + 0.08 * u());
        disks[k].shade = (k == 0 ? 1.0 : -1.0) * (50.0 + 40.0 * u());
    }

    std::vector<std::uint8_t> pixels(std::size_t(width) * height);
    for (int y = 0; y < height; ++y) {
        const double yn = double(y) / height;
        for (int x = 0; x < width; ++x) {
            const double xn = double(x) / width;
            double v = 128.0;
            v += 52.0 * std::sin(kTau * fx * xn + phase_x) * std::sin(kTau * fy * yn + phase_y);
            v += 26.0 * std::sin(kTau * f_diag * (xn + yn) + phase_diag);
            v += 30.0 * (0.5 - yn);
            for (const Disk& d : disks) {
                const double dist = std::hypot(x - d.cx, y - d.cy);
                // Rim softened over ~3 px so the disk boundary reads as a
                // strong but finite gradient.
                const double t = std::clamp((dist - (d.radius - 1.5)) / 3.0, 0.0, 1.0);
                v += d.shade * (1.0 - t);
            }
            pixels[std::size_t(y) * width + x] = to_pixel(v);
        }
    }
    return pad_to_blocks(width, height, pixels);
}

Image synth_step(int width, int height, int step_col, std::uint8_t left, std::uint8_t right) {
    if (width <= 0 || height <= 0)
        throw ArgumentError("step dimensions must be positive");
    if (step_col < 0 || step_col > width)
        throw ArgumentError("step column outside the image");

    std::vector<std::uint8_t> pixels(std::size_t(width) * height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            pixels[std::size_t(y) * width + x] = x < step_col ? left : right;
    return pad_to_blocks(width, height, pixels);
}

Image synth_testcard(int width, int height) {
    if (width <= 0 || height <= 0)
        throw ArgumentError("test card dimensions must be positive");

    const double cx = (width - 1) / 2.0;
    const double cy = (height - 1) / 2.0;
    const double ring_zone = std::min(width, height) / 3.0;

    std::vector<std::uint8_t> pixels(std::size_t(width) * height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double v = 180.0 * x / std::max(1, width - 1) + 40.0 * y / std::max(1, height - 1);
            const double r = std::hypot(x - cx, y - cy);
            if (r < ring_zone)
                v = 128.0 + 110.0 * std::cos(r / 6.0);
            if (y >= height - 24)
                v = (x / 8) % 2 == 0 ? 60.0 : 200.0;
            pixels[std::size_t(y) * width + x] = to_pixel(v);
        }
    }
    return pad_to_blocks(width, height, pixels);
}

} // namespace esl
