#pragma once

#include <cstdint>

#include "stegkit/raster.hpp"

namespace stegkit {

// Tiny deterministic generator (splitmix64). Used for synthetic images and
// by the test suites; independent of the standard library's distributions so
// outputs are identical across toolchains.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint8_t next_byte() { return static_cast<std::uint8_t>(next() >> 56); }
    // Uniform in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }
};

enum class SynthKind { uniform_noise, gradient, constant };

// Deterministic synthetic image for the hermetic corpus: uniform random
// channel bytes, a diagonal RGB gradient, or a constant fill.
RasterImage synth_image(SynthKind kind, int width, int height, std::uint64_t seed = 0,
                        Rgb fill = {128, 128, 128});

}  // namespace stegkit
