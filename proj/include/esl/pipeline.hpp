#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esl/channel.hpp"
#include "esl/codec.hpp"
#include "esl/conceal.hpp"
#include "esl/edge_map.hpp"
#include "esl/image.hpp"
#include "esl/metrics.hpp"

namespace esl {

struct EmbedOptions {
    double edge_threshold = 0.25;
    int column_offset = 4;
};

struct EmbedResult {
    PacketStream stream;
    EdgeMap edges;
};

/// Transmitter: detect edges, transform and quantize each block with its
/// assigned edge column hidden in the coefficient parities, entropy-code
/// one packet per block.
EmbedResult embed_image(const Image& image, const EmbedOptions& options = {});

struct ReceiverOutput {
    Image concealed;
    Image gray_filled; // survivors decoded, lost blocks left flat 128
    std::vector<std::string> warnings;
};

/// Receiver: decode survivors, then conceal the losses. gray_filled is the
/// pre-concealment raster, kept as the naive-baseline comparison.
ReceiverOutput receive(const PacketStream& stream, const LossMask& mask);

/// Decode a complete stream (every packet present).
Image decode_full(const PacketStream& stream);

struct NamedImage {
    std::string name;
    Image image;
};

struct ExperimentConfig {
    std::vector<double> loss_probabilities{0.01, 0.05, 0.10, 0.20, 0.30, 0.50, 0.70};
    int trials = 20;
    std::uint64_t base_seed = 0;
    EmbedOptions embed;
};

/// Per-trial PSNR for both reconstruction methods, rows sorted by
/// (image, loss probability, seed). A trial whose pipeline stage throws
/// yields a NaN row; the sweep keeps going.
struct SweepResult {
    std::vector<PsnrRecord> concealed;
    std::vector<PsnrRecord> gray_fill;
};

SweepResult run_sweep(const std::vector<NamedImage>& images, const ExperimentConfig& config);

/// Write records (concealed method) as CSV, byte-deterministic.
void write_csv(const std::vector<PsnrRecord>& records, const std::string& path);

/// Mean and standard deviation of concealed PSNR per (image, p) point.
std::string sweep_summary(const SweepResult& result);

/// One row per image: mean PSNR of gray fill vs concealment at the chosen
/// loss probability, side by side.
std::string comparison_table(const SweepResult& result, double loss_probability);

} // namespace esl
