#pragma once

#include <array>
#include <limits>

#include "stegkit/raster.hpp"

namespace stegkit {

// The four fidelity measures for one (reference, test) pair.
// psnr is +infinity when mse is 0.
struct MetricReport {
    double mse = 0.0;
    double psnr = std::numeric_limits<double>::infinity();
    double nae = 0.0;
    double ssim = 1.0;
};

inline constexpr double kPeakSignal = 255.0;
inline constexpr int kSsimWindow = 8;
inline constexpr double kSsimC1 = (0.01 * 255.0) * (0.01 * 255.0);
inline constexpr double kSsimC2 = (0.03 * 255.0) * (0.03 * 255.0);

// Mean squared error per channel plane: sum of squared differences / (H*W).
std::array<double, 3> mse_per_channel(const RasterImage& reference, const RasterImage& test);

// Per-plane MSE averaged over the three channels. Throws DimensionMismatch.
double mse(const RasterImage& reference, const RasterImage& test);

// 10*log10(255^2 / mse); +infinity for mse = 0.
double psnr(double mse_value);

// Normalized absolute error: sum|P-S| / sum|S|, summed jointly over all
// pixels and channels. Note the denominator is the *test* image, so the
// measure is not symmetric. Throws DimensionMismatch / ZeroDenominator.
double nae(const RasterImage& reference, const RasterImage& test);

// Structural similarity on BT.601 luminance: 8x8 square window, stride 1,
// uniform weighting, C1=(0.01*255)^2, C2=(0.03*255)^2, mean over windows.
// Throws DimensionMismatch / ImageTooSmall (either dimension < 8).
double ssim(const RasterImage& reference, const RasterImage& test);

// All four metrics on the same pair.
MetricReport report(const RasterImage& reference, const RasterImage& test);

}  // namespace stegkit
