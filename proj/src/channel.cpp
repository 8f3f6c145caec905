#include "esl/channel.hpp"

#include <fstream>

#include "esl/error.hpp"

namespace esl {

TransmitResult transmit(const PacketStream& stream, const ChannelConfig& config) {
    const double p = config.loss_probability;
    if (!(p >= 0.0 && p <= 1.0))
        throw ArgumentError("loss probability must be in [0, 1]");

    const BlockGrid grid = stream.header.grid();
    if (stream.packets.size() != std::size_t(grid.count()))
        throw ArgumentError("transmit expects a complete stream (one packet per block)");

    TransmitResult result;
    result.stream.header = stream.header;
    result.mask.lost.assign(grid.count(), 0);

    SplitMix64 rng(config.seed);
    for (std::size_t i = 0; i < stream.packets.size(); ++i) {
        const double u = rng.next_uniform();
        if (u < p)
            result.mask.lost[i] = 1;
        else
            result.stream.packets.push_back(stream.packets[i]);
    }
    return result;
}

double loss_rate(const LossMask& mask) {
    if (mask.lost.empty())
        throw ArgumentError("loss rate of an empty mask is undefined");
    std::size_t dropped = 0;
    for (std::uint8_t flag : mask.lost)
        if (flag)
            ++dropped;
    return double(dropped) / double(mask.lost.size());
}

void write_mask(const LossMask& mask, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(mask.lost.data()),
              std::streamsize(mask.lost.size()));
    if (!out)
        throw IoError("short write to " + path);
}

LossMask read_mask(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>()};
    LossMask mask;
    mask.lost.reserve(bytes.size());
    for (std::uint8_t b : bytes) {
        if (b > 1)
            throw FormatError("mask byte must be 0 or 1 in " + path);
        mask.lost.push_back(b);
    }
    return mask;
}

} // namespace esl
