#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esl/codec.hpp"

namespace esl {

/// SplitMix64 (Vigna's public-domain mixer). Chosen for the channel because
/// its output sequence is fixed by the algorithm, not by a standard-library
/// implementation, so a (stream, p, seed) triple reproduces the same loss
/// pattern everywhere. Reference outputs for seed 0:
///   0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = state_ += 0x9E3779B97F4A7C15ULL;
        z = (z ^ z >> 30) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ z >> 27) * 0x94D049BB133111EBULL;
        return z ^ z >> 31;
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double next_uniform() { return double(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

struct ChannelConfig {
    double loss_probability = 0.0; // in [0, 1]
    std::uint64_t seed = 0;
};

/// Ground-truth record of which block-packets the channel dropped.
struct LossMask {
    std::vector<std::uint8_t> lost; // one flag per block index

    std::size_t size() const { return lost.size(); }
    bool is_lost(std::size_t i) const { return lost[i] != 0; }
};

struct TransmitResult {
    PacketStream stream; // surviving packets only, bit-identical to input
    LossMask mask;
};

/// Drop each packet independently with probability p, drawing one uniform
/// per block in block-index order. Deterministic for a fixed (stream, config).
TransmitResult transmit(const PacketStream& stream, const ChannelConfig& config);

/// Fraction of lost blocks. Empty masks are an error.
double loss_rate(const LossMask& mask);

void write_mask(const LossMask& mask, const std::string& path);
LossMask read_mask(const std::string& path);

} // namespace esl
