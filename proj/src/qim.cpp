#include "esl/qim.hpp"

#include <cmath>
#include <cstdlib>

namespace esl {

const std::array<std::pair<int, int>, 8>& watermark_positions() {
    // Low-frequency AC positions, 0-based (row, col), in payload order.
    static const std::array<std::pair<int, int>, 8> positions = {{
        {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {3, 0},
    }};
    return positions;
}

int standard_round(double ratio) {
    return int(std::lround(ratio)); // lround: halfway cases away from zero
}

int parity_round(double ratio, int bit) {
    // Bracket ratio between the nearest integers of the wanted parity;
    // they coincide when ratio itself is such an integer and are at most
    // 2 apart otherwise, so the winner is always within distance 1.
    long long lo = (long long)std::floor(ratio);
    while ((std::llabs(lo) & 1) != bit) --lo;
    long long hi = (long long)std::ceil(ratio);
    while ((std::llabs(hi) & 1) != bit) ++hi;
    if (lo == hi) return int(lo);

    const double d_lo = ratio - double(lo);
    const double d_hi = double(hi) - ratio;
    if (d_lo < d_hi) return int(lo);
    if (d_hi < d_lo) return int(hi);
    // Equidistant: smaller magnitude wins; a +k/-k tie resolves positive.
    if (std::llabs(lo) != std::llabs(hi))
        return int(std::llabs(lo) < std::llabs(hi) ? lo : hi);
    return int(hi);
}

QuantizedBlock embed_block(const RatioBlock& ratios, const EdgeColumn& payload) {
    QuantizedBlock out;
    for (int i = 0; i < 64; ++i)
        out.levels[std::size_t(i)] = standard_round(ratios.values[std::size_t(i)]);
    const auto& positions = watermark_positions();
    for (std::size_t k = 0; k < positions.size(); ++k) {
        const auto [r, c] = positions[k];
        out.at(r, c) = parity_round(ratios.at(r, c), payload.bits[k]);
    }
    return out;
}

EdgeColumn extract_block(const QuantizedBlock& levels) {
    EdgeColumn col;
    const auto& positions = watermark_positions();
    for (std::size_t k = 0; k < positions.size(); ++k) {
        const auto [r, c] = positions[k];
        col.bits[k] = std::uint8_t(std::abs(levels.at(r, c)) % 2);
    }
    return col;
}

} // namespace esl
