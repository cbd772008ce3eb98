#include "stegkit/stego.hpp"

#include <cassert>

#include "stegkit/errors.hpp"

namespace stegkit {

namespace {

// Writes `bit` at 1-based LSB position m of a channel byte.
inline std::uint8_t write_bit(std::uint8_t channel, int m, int bit) {
    const std::uint8_t mask = static_cast<std::uint8_t>(1u << (m - 1));
    return bit ? static_cast<std::uint8_t>(channel | mask)
               : static_cast<std::uint8_t>(channel & ~mask);
}

inline int read_bit(std::uint8_t channel, int m) {
    return (channel >> (m - 1)) & 1;
}

}  // namespace

Rgb embed_byte(Rgb cover, std::uint8_t secret, const EmbeddingScheme& scheme) {
    assert(scheme.valid());
    std::uint8_t channels[3] = {cover.r, cover.g, cover.b};
    int k = 1;  // 1-based index of the consumed secret bit within this pixel
    for (int channel = 0; channel < 3; ++channel) {
        for (int i = 0; i < scheme.bits_for_channel(channel); ++i, ++k) {
            const int bit = (secret >> (8 - k)) & 1;  // most significant first
            channels[channel] = write_bit(channels[channel], hash_position(k, scheme.lsb_window), bit);
        }
    }
    return {channels[0], channels[1], channels[2]};
}

std::uint8_t extract_byte(Rgb stego, const EmbeddingScheme& scheme) {
    assert(scheme.valid());
    const std::uint8_t channels[3] = {stego.r, stego.g, stego.b};
    std::uint8_t secret = 0;
    int k = 1;
    for (int channel = 0; channel < 3; ++channel) {
        for (int i = 0; i < scheme.bits_for_channel(channel); ++i, ++k) {
            secret = static_cast<std::uint8_t>(
                (secret << 1) | read_bit(channels[channel], hash_position(k, scheme.lsb_window)));
        }
    }
    return secret;
}

std::uint64_t capacity_bits(int cover_width, int cover_height, const EmbeddingScheme& scheme) {
    (void)scheme;  // both shipped schemes carry one secret byte per pixel
    return static_cast<std::uint64_t>(cover_width) * cover_height * 8;
}

RasterImage embed_stream(const RasterImage& cover, std::span<const std::uint8_t> payload,
                         const EmbeddingScheme& scheme) {
    const std::uint64_t required = static_cast<std::uint64_t>(payload.size()) * 8;
    const std::uint64_t available = capacity_bits(cover.width, cover.height, scheme);
    if (required > available) {
        throw InsufficientCapacity(required, available);
    }
    RasterImage stego = cover;
    for (std::size_t i = 0; i < payload.size(); ++i) {
        stego.set_pixel(i, embed_byte(cover.pixel(i), payload[i], scheme));
    }
    return stego;
}

RasterImage extract_stream(const RasterImage& stego, const EmbeddingScheme& scheme) {
    const std::size_t pixel_count = stego.pixel_count();
    if (pixel_count < PayloadHeader::kSize) {
        throw Truncated("stego image too small to hold a payload header");
    }
    std::array<std::uint8_t, PayloadHeader::kSize> header_bytes{};
    for (std::size_t i = 0; i < PayloadHeader::kSize; ++i) {
        header_bytes[i] = extract_byte(stego.pixel(i), scheme);
    }
    const PayloadHeader header = parse_header(header_bytes);
    if (header.scheme_wire_id != scheme.wire_id) {
        throw BadMagic("payload was embedded with a different scheme");
    }
    const std::uint64_t body_bytes = header.body_bytes();
    if (pixel_count - PayloadHeader::kSize < body_bytes) {
        throw Truncated("stego image too small for the declared secret: needs " +
                        std::to_string(PayloadHeader::kSize + body_bytes) + " pixels, has " +
                        std::to_string(pixel_count));
    }
    RasterImage secret(static_cast<int>(header.width), static_cast<int>(header.height));
    for (std::uint64_t i = 0; i < body_bytes; ++i) {
        secret.pixels[static_cast<std::size_t>(i)] =
            extract_byte(stego.pixel(static_cast<std::size_t>(PayloadHeader::kSize + i)), scheme);
    }
    return secret;
}

}  // namespace stegkit
