#include "esl/metrics.hpp"

#include <cmath>
#include <cstdio>

#include "esl/error.hpp"

namespace esl {

double mse(const Image& reference, const Image& test) {
    if (reference.orig_width != test.orig_width ||
        reference.orig_height != test.orig_height)
        throw ArgumentError("MSE requires images of equal original size");
    if (reference.orig_width == 0 || reference.orig_height == 0)
        throw ArgumentError("MSE of an empty image is undefined");

    double sum = 0.0;
    for (int y = 0; y < reference.orig_height; ++y) {
        for (int x = 0; x < reference.orig_width; ++x) {
            const double d = double(reference.at(x, y)) - double(test.at(x, y));
            sum += d * d;
        }
    }
    return sum / (double(reference.orig_width) * double(reference.orig_height));
}

double psnr(double mse_value) {
    if (mse_value < 0.0)
        throw ArgumentError("MSE cannot be negative");
    if (mse_value == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / mse_value);
}

std::string csv_header() { return "image,loss_prob,seed,mse,psnr_db"; }

std::string csv_row(const PsnrRecord& record) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s,%.2f,%llu,%.6f,%.6f",
                  record.image.c_str(), record.loss_probability,
                  static_cast<unsigned long long>(record.seed),
                  record.mse_value, record.psnr_db);
    return buf;
}

} // namespace esl
