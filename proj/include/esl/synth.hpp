#pragma once

#include <cstdint>

#include "esl/image.hpp"

namespace esl {

/// Smoothly shaded scene with a few hard-edged disks; stands in for natural
/// photographs in tests and demos. Deterministic per (size, seed).
Image synth_scene(int width, int height, std::uint64_t seed);

/// Vertical two-level step: columns < step_col hold `left`, the rest `right`.
Image synth_step(int width, int height, int step_col, std::uint8_t left, std::uint8_t right);

/// Fixed test card: gradient base, concentric rings, bar strip. No seed.
Image synth_testcard(int width, int height);

} // namespace esl
