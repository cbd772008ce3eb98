#include "stegkit/metrics.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "stegkit/errors.hpp"

namespace stegkit {

namespace {

void require_same_shape(const RasterImage& reference, const RasterImage& test) {
    if (reference.width != test.width || reference.height != test.height) {
        throw DimensionMismatch("images differ in size: " + std::to_string(reference.width) + "x" +
                                std::to_string(reference.height) + " vs " +
                                std::to_string(test.width) + "x" + std::to_string(test.height));
    }
    if (reference.width < 1 || reference.height < 1) {
        throw ZeroDimension("cannot compare empty images");
    }
}

}  // namespace

std::array<double, 3> mse_per_channel(const RasterImage& reference, const RasterImage& test) {
    require_same_shape(reference, test);
    std::uint64_t sums[3] = {0, 0, 0};
    const std::size_t n = reference.pixels.size();
    for (std::size_t i = 0; i < n; i += 3) {
        for (int c = 0; c < 3; ++c) {
            const int d = static_cast<int>(reference.pixels[i + c]) -
                          static_cast<int>(test.pixels[i + c]);
            sums[c] += static_cast<std::uint64_t>(d) * static_cast<std::uint64_t>(d);
        }
    }
    const double count = static_cast<double>(reference.pixel_count());
    return {static_cast<double>(sums[0]) / count, static_cast<double>(sums[1]) / count,
            static_cast<double>(sums[2]) / count};
}

double mse(const RasterImage& reference, const RasterImage& test) {
    const auto per_channel = mse_per_channel(reference, test);
    return (per_channel[0] + per_channel[1] + per_channel[2]) / 3.0;
}

double psnr(double mean_squared_error) {
    if (mean_squared_error <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(kPeakSignal * kPeakSignal / mean_squared_error);
}

double nae(const RasterImage& reference, const RasterImage& test) {
    require_same_shape(reference, test);
    std::uint64_t abs_sum = 0;
    std::uint64_t test_sum = 0;
    const std::size_t n = reference.pixels.size();
    for (std::size_t i = 0; i < n; ++i) {
        const int d = static_cast<int>(reference.pixels[i]) - static_cast<int>(test.pixels[i]);
        abs_sum += static_cast<std::uint64_t>(d < 0 ? -d : d);
        test_sum += test.pixels[i];
    }
    if (test_sum == 0) {
        throw ZeroDenominator("NAE is undefined against an all-black image");
    }
    return static_cast<double>(abs_sum) / static_cast<double>(test_sum);
}

double ssim(const RasterImage& reference, const RasterImage& test) {
    require_same_shape(reference, test);
    const int w = reference.width;
    const int h = reference.height;
    if (w < kSsimWindow || h < kSsimWindow) {
        throw ImageTooSmall("SSIM needs at least " + std::to_string(kSsimWindow) + "x" +
                            std::to_string(kSsimWindow) + " pixels, got " + std::to_string(w) +
                            "x" + std::to_string(h));
    }

    // Work on luminance planes.
    std::vector<double> lx(static_cast<std::size_t>(w) * h);
    std::vector<double> ly(lx.size());
    for (std::size_t i = 0, px = 0; px < lx.size(); i += 3, ++px) {
        lx[px] = 0.299 * reference.pixels[i] + 0.587 * reference.pixels[i + 1] +
                 0.114 * reference.pixels[i + 2];
        ly[px] = 0.299 * test.pixels[i] + 0.587 * test.pixels[i + 1] +
                 0.114 * test.pixels[i + 2];
    }

    // Summed-area tables, one row/column of zero padding, for O(1) window sums.
    const int sw = w + 1;
    const int sh = h + 1;
    const std::size_t sat_size = static_cast<std::size_t>(sw) * sh;
    std::vector<double> sx(sat_size, 0.0), sy(sat_size, 0.0), sxx(sat_size, 0.0),
        syy(sat_size, 0.0), sxy(sat_size, 0.0);
    for (int y = 1; y < sh; ++y) {
        for (int x = 1; x < sw; ++x) {
            const std::size_t p = static_cast<std::size_t>(y - 1) * w + (x - 1);
            const std::size_t s = static_cast<std::size_t>(y) * sw + x;
            const std::size_t up = s - sw;
            const std::size_t left = s - 1;
            const std::size_t diag = up - 1;
            const double a = lx[p];
            const double b = ly[p];
            sx[s] = a + sx[up] + sx[left] - sx[diag];
            sy[s] = b + sy[up] + sy[left] - sy[diag];
            sxx[s] = a * a + sxx[up] + sxx[left] - sxx[diag];
            syy[s] = b * b + syy[up] + syy[left] - syy[diag];
            sxy[s] = a * b + sxy[up] + sxy[left] - sxy[diag];
        }
    }

    const auto window_sum = [sw](const std::vector<double>& sat, int x0, int y0, int x1, int y1) {
        // Inclusive pixel rect [x0, x1] x [y0, y1] in image coordinates.
        const std::size_t br = static_cast<std::size_t>(y1 + 1) * sw + (x1 + 1);
        const std::size_t tr = static_cast<std::size_t>(y0) * sw + (x1 + 1);
        const std::size_t bl = static_cast<std::size_t>(y1 + 1) * sw + x0;
        const std::size_t tl = static_cast<std::size_t>(y0) * sw + x0;
        return sat[br] - sat[tr] - sat[bl] + sat[tl];
    };

    const double n = static_cast<double>(kSsimWindow) * kSsimWindow;
    double total = 0.0;
    std::size_t windows = 0;
    for (int y0 = 0; y0 + kSsimWindow <= h; ++y0) {
        const int y1 = y0 + kSsimWindow - 1;
        for (int x0 = 0; x0 + kSsimWindow <= w; ++x0) {
            const int x1 = x0 + kSsimWindow - 1;
            const double mx = window_sum(sx, x0, y0, x1, y1) / n;
            const double my = window_sum(sy, x0, y0, x1, y1) / n;
            const double vx = window_sum(sxx, x0, y0, x1, y1) / n - mx * mx;
            const double vy = window_sum(syy, x0, y0, x1, y1) / n - my * my;
            const double cov = window_sum(sxy, x0, y0, x1, y1) / n - mx * my;
            const double numerator = (2.0 * mx * my + kSsimC1) * (2.0 * cov + kSsimC2);
            const double denominator = (mx * mx + my * my + kSsimC1) * (vx + vy + kSsimC2);
            total += numerator / denominator;
            ++windows;
        }
    }
    return total / static_cast<double>(windows);
}

MetricReport report(const RasterImage& reference, const RasterImage& test) {
    MetricReport out;
    out.mse = mse(reference, test);
    out.psnr = psnr(out.mse);
    out.nae = nae(reference, test);
    out.ssim = ssim(reference, test);
    return out;
}

}  // namespace stegkit
