#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "stegkit/raster.hpp"
#include "stegkit/scheme.hpp"

namespace stegkit {

// Fixed 15-byte frame in front of the secret pixel bytes. The receiver needs
// the secret's dimensions to know when to stop reading; the header carries
// them in-band.
//
// Wire layout (big-endian where multi-byte):
//   offset  0..3   magic "S233" (0x53 0x32 0x33 0x33)
//   offset  4      version (0x01)
//   offset  5      scheme id (0x01 = "233", 0x02 = "332")
//   offset  6..9   secret width,  u32 BE
//   offset 10..13  secret height, u32 BE
//   offset 14      channels (0x03)
struct PayloadHeader {
    static constexpr std::array<std::uint8_t, 4> kMagic{0x53, 0x32, 0x33, 0x33};
    static constexpr std::uint8_t kVersion = 0x01;
    static constexpr std::size_t kSize = 15;

    std::uint8_t scheme_wire_id = 0;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint8_t channels = 3;

    std::uint64_t body_bytes() const {
        return static_cast<std::uint64_t>(width) * height * channels;
    }

    bool operator==(const PayloadHeader&) const = default;
};

std::array<std::uint8_t, PayloadHeader::kSize> serialize_header(const PayloadHeader& header);

// Validates magic, version, scheme id, channels and dimensions.
// Throws BadMagic / UnsupportedVersion / Truncated.
PayloadHeader parse_header(std::span<const std::uint8_t> bytes);

// Header plus the secret pixel bytes (row-major, R,G,B interleaved).
struct StegoPayload {
    PayloadHeader header;
    std::vector<std::uint8_t> body;

    bool operator==(const StegoPayload&) const = default;
};

StegoPayload build_payload(const RasterImage& secret, const EmbeddingScheme& scheme);

std::vector<std::uint8_t> serialize_payload(const StegoPayload& payload);

// Inverse of serialize_payload. Throws BadMagic / UnsupportedVersion /
// Truncated (declared body exceeds the available bytes). Trailing bytes
// beyond the declared body are ignored.
StegoPayload parse_payload(std::span<const std::uint8_t> bytes);

}  // namespace stegkit
