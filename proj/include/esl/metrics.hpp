#pragma once

#include <limits>
#include <string>

#include "esl/image.hpp"

namespace esl {

/// Mean squared error over the unpadded extent of both images.
/// The original extents must match.
double mse(const Image& reference, const Image& test);

/// PSNR in dB for 8-bit images: 10 * log10(255^2 / mse).
/// Identical images yield +infinity.
double psnr(double mse_value);

inline double psnr_between(const Image& reference, const Image& test) {
    return psnr(mse(reference, test));
}

/// One row of an evaluation run.
struct PsnrRecord {
    std::string image;
    double loss_probability = 0.0;
    std::uint64_t seed = 0;
    double mse_value = 0.0;
    double psnr_db = 0.0;
};

/// "image,loss_prob,seed,mse,psnr_db" with fixed formatting so that
/// identical runs produce byte-identical files.
std::string csv_header();
std::string csv_row(const PsnrRecord& record);

} // namespace esl
