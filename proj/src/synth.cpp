#include "stegkit/synth.hpp"

#include "stegkit/errors.hpp"

namespace stegkit {

namespace {

std::uint8_t ramp(int numerator, int denominator) {
    if (denominator <= 0) return 0;  // single-pixel axis: no gradient to draw
    return static_cast<std::uint8_t>(numerator * 255 / denominator);
}

}  // namespace

RasterImage synth_image(SynthKind kind, int width, int height, std::uint64_t seed, Rgb fill) {
    if (width < 1 || height < 1) throw ZeroDimension("synthetic image needs positive dimensions");
    RasterImage image(width, height);
    switch (kind) {
        case SynthKind::uniform_noise: {
            SplitMix64 rng{seed};
            for (std::uint8_t& byte : image.pixels) byte = rng.next_byte();
            break;
        }
        case SynthKind::gradient: {
            for (int y = 0; y < height; ++y) {
                for (int x = 0; x < width; ++x) {
                    image.set_pixel_at(x, y, Rgb{ramp(x, width - 1), ramp(y, height - 1),
                                                 ramp(x + y, width + height - 2)});
                }
            }
            break;
        }
        case SynthKind::constant: {
            for (std::size_t i = 0; i < image.pixels.size(); i += 3) {
                image.pixels[i] = fill.r;
                image.pixels[i + 1] = fill.g;
                image.pixels[i + 2] = fill.b;
            }
            break;
        }
    }
    return image;
}

}  // namespace stegkit
