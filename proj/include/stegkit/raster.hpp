#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace stegkit {

// One RGB pixel, 8 bits per channel.
struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    bool operator==(const Rgb&) const = default;
};

// Decoded image: row-major, top-left origin, channels interleaved R,G,B.
// The universal in-memory form; every decoder normalizes to it.
struct RasterImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // 3 * width * height bytes

    RasterImage() = default;
    RasterImage(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h * 3, 0) {}

    static RasterImage filled(int w, int h, Rgb color) {
        RasterImage img(w, h);
        for (std::size_t i = 0; i < img.pixel_count(); ++i) img.set_pixel(i, color);
        return img;
    }

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    std::size_t byte_count() const { return pixels.size(); }

    Rgb pixel(std::size_t index) const {
        const std::uint8_t* p = pixels.data() + index * 3;
        return {p[0], p[1], p[2]};
    }
    Rgb pixel_at(int x, int y) const { return pixel(static_cast<std::size_t>(y) * width + x); }

    void set_pixel(std::size_t index, Rgb c) {
        std::uint8_t* p = pixels.data() + index * 3;
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
    }
    void set_pixel_at(int x, int y, Rgb c) { set_pixel(static_cast<std::size_t>(y) * width + x, c); }

    bool operator==(const RasterImage&) const = default;
};

}  // namespace stegkit
