#include "esl/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "esl/error.hpp"
#include "esl/qim.hpp"

namespace esl {

EmbedResult embed_image(const Image& image, const EmbedOptions& options) {
    if (options.column_offset < 0 || options.column_offset > 7)
        throw ArgumentError("column offset must be in [0, 7]");
    if (image.width > 0xFFFF || image.height > 0xFFFF)
        throw ArgumentError("image too large for the stream header");

    EmbedResult result;
    result.edges = detect_edges(image, options.edge_threshold);

    const BlockGrid grid = grid_for(image.width, image.height);
    const AssignmentPermutation assignment(grid.count());
    const std::vector<Block> blocks = partition(level_shift_forward(image));

    StreamHeader header;
    header.width = std::uint16_t(image.width);
    header.height = std::uint16_t(image.height);
    header.orig_width = std::uint16_t(image.orig_width);
    header.orig_height = std::uint16_t(image.orig_height);
    header.column_offset = std::uint8_t(options.column_offset);
    header.assignment_scheme = StreamHeader::kAssignmentHalfGridShift;
    header.edge_threshold = float(options.edge_threshold);
    result.stream.header = header;

    result.stream.packets.reserve(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const RatioBlock ratios = quantize(forward_dct(blocks[i]));
        const EdgeColumn payload =
            payload_for_block(result.edges, assignment, int(i), options.column_offset);
        const QuantizedBlock levels = embed_block(ratios, payload);
        result.stream.packets.push_back(Packet{std::uint32_t(i), encode_block(levels)});
    }
    return result;
}

ReceiverOutput receive(const PacketStream& stream, const LossMask& mask) {
    ReceiverState state = decode_received(stream, mask);
    ReceiverOutput output;
    output.gray_filled = state.raster;
    output.warnings = state.warnings;
    output.concealed = conceal_all(state);
    return output;
}

Image decode_full(const PacketStream& stream) {
    LossMask none;
    none.lost.assign(std::size_t(stream.header.grid().count()), 0);
    return receive(stream, none).concealed;
}

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

bool record_before(const PsnrRecord& a, const PsnrRecord& b) {
    if (a.image != b.image)
        return a.image < b.image;
    if (a.loss_probability != b.loss_probability)
        return a.loss_probability < b.loss_probability;
    return a.seed < b.seed;
}

struct Moments {
    int n = 0;
    double mean = kNan;
    double sd = kNan;
};

Moments moments_of(const std::vector<double>& values) {
    Moments m;
    double sum = 0.0;
    for (double v : values) {
        if (std::isnan(v))
            continue;
        sum += v;
        ++m.n;
    }
    if (m.n == 0)
        return m;
    m.mean = sum / m.n;
    if (m.n == 1) {
        m.sd = 0.0;
        return m;
    }
    double ss = 0.0;
    for (double v : values) {
        if (std::isnan(v))
            continue;
        ss += (v - m.mean) * (v - m.mean);
    }
    m.sd = std::sqrt(ss / (m.n - 1));
    return m;
}

} // namespace

SweepResult run_sweep(const std::vector<NamedImage>& images, const ExperimentConfig& config) {
    if (images.empty())
        throw ArgumentError("experiment needs at least one image");
    if (config.trials < 1)
        throw ArgumentError("trials must be at least 1");
    if (config.loss_probabilities.empty())
        throw ArgumentError("experiment needs at least one loss probability");
    for (double p : config.loss_probabilities)
        if (!(p >= 0.0 && p <= 1.0))
            throw ArgumentError("loss probability must be in [0, 1]");

    SweepResult result;
    for (const NamedImage& named : images) {
        PacketStream stream;
        bool embedded = false;
        try {
            stream = embed_image(named.image, config.embed).stream;
            embedded = true;
        } catch (const std::exception&) {
        }
        for (double p : config.loss_probabilities) {
            for (int trial = 0; trial < config.trials; ++trial) {
                const std::uint64_t seed = config.base_seed + std::uint64_t(trial);
                PsnrRecord concealed{named.name, p, seed, kNan, kNan};
                PsnrRecord gray = concealed;
                if (embedded) {
                    try {
                        const TransmitResult sent = transmit(stream, ChannelConfig{p, seed});
                        const ReceiverOutput out = receive(sent.stream, sent.mask);
                        gray.mse_value = mse(named.image, out.gray_filled);
                        gray.psnr_db = psnr(gray.mse_value);
                        concealed.mse_value = mse(named.image, out.concealed);
                        concealed.psnr_db = psnr(concealed.mse_value);
                    } catch (const std::exception&) {
                        concealed.mse_value = concealed.psnr_db = kNan;
                        gray.mse_value = gray.psnr_db = kNan;
                    }
                }
                result.concealed.push_back(concealed);
                result.gray_fill.push_back(gray);
            }
        }
    }
    std::sort(result.concealed.begin(), result.concealed.end(), record_before);
    std::sort(result.gray_fill.begin(), result.gray_fill.end(), record_before);
    return result;
}

void write_csv(const std::vector<PsnrRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << csv_header() << '\n';
    for (const PsnrRecord& record : records)
        out << csv_row(record) << '\n';
    if (!out)
        throw IoError("short write to " + path);
}

std::string sweep_summary(const SweepResult& result) {
    std::string text;
    char line[160];
    std::size_t i = 0;
    while (i < result.concealed.size()) {
        std::size_t j = i;
        std::vector<double> values;
        while (j < result.concealed.size() &&
               result.concealed[j].image == result.concealed[i].image &&
               result.concealed[j].loss_probability == result.concealed[i].loss_probability) {
            values.push_back(result.concealed[j].psnr_db);
            ++j;
        }
        const Moments m = moments_of(values);
        std::snprintf(line, sizeof line, "%-16s p=%.2f  mean %7.2f dB  sd %5.2f dB  (n=%d/%zu)\n",
                      result.concealed[i].image.c_str(),
                      result.concealed[i].loss_probability, m.mean, m.sd, m.n, values.size());
        text += line;
        i = j;
    }
    return text;
}

std::string comparison_table(const SweepResult& result, double loss_probability) {
    std::vector<std::string> names;
    for (const PsnrRecord& record : result.concealed)
        if (names.empty() || names.back() != record.image)
            if (std::find(names.begin(), names.end(), record.image) == names.end())
                names.push_back(record.image);

    char line[160];
    std::snprintf(line, sizeof line,
                  "Mean PSNR (dB) at packet loss probability %.2f\n", loss_probability);
    std::string text = line;
    std::snprintf(line, sizeof line, "%-16s  %12s  %12s\n", "Image", "Gray fill", "Concealed");
    text += line;

    auto mean_at = [&](const std::vector<PsnrRecord>& records, const std::string& name) {
        std::vector<double> values;
        for (const PsnrRecord& record : records)
            if (record.image == name && record.loss_probability == loss_probability)
                values.push_back(record.psnr_db);
        return moments_of(values).mean;
    };

    for (const std::string& name : names) {
        std::snprintf(line, sizeof line, "%-16s  %12.2f  %12.2f\n", name.c_str(),
                      mean_at(result.gray_fill, name), mean_at(result.concealed, name));
        text += line;
    }
    return text;
}

} // namespace esl
