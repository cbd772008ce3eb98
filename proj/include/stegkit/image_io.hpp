#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "stegkit/raster.hpp"

namespace stegkit {

enum class ImageFormat { png, bmp };

// Decodes PNG, BMP or JPEG from a byte buffer (format sniffed from the
// signature). Grayscale and paletted sources are expanded to RGB; an alpha
// channel is dropped with a warning on stderr.
// Throws UnsupportedFormat / CorruptFile / ZeroDimension.
RasterImage decode_image(std::span<const std::uint8_t> bytes);

// decode_image on the file's contents. Throws IoFailure if unreadable.
RasterImage load_image(const std::filesystem::path& source);

std::vector<std::uint8_t> encode_png(const RasterImage& image);
std::vector<std::uint8_t> encode_bmp(const RasterImage& image);

// Writes PNG (default) or BMP. With no explicit format the extension picks:
// ".bmp" writes BMP, anything else PNG. Lossy extensions (.jpg/.jpeg) are
// rejected with UnsupportedFormat: an LSB payload does not survive lossy
// re-encoding. Throws IoFailure on write errors.
void save_lossless(const RasterImage& image, const std::filesystem::path& destination,
                   std::optional<ImageFormat> format = std::nullopt);

}  // namespace stegkit
