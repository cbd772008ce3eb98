#pragma once

#include <cstdint>
#include <span>

#include "stegkit/payload.hpp"
#include "stegkit/raster.hpp"
#include "stegkit/scheme.hpp"

namespace stegkit {

// Writes one secret byte into one cover pixel. Bits are consumed most
// significant first: the first r_bits go to Red, the next g_bits to Green,
// the last b_bits to Blue; the k-th consumed bit lands at LSB position
// hash_position(k, window) of its channel. Bits outside the written
// positions are untouched.
Rgb embed_byte(Rgb cover, std::uint8_t secret, const EmbeddingScheme& scheme);

// Exact inverse of embed_byte's placement.
std::uint8_t extract_byte(Rgb stego, const EmbeddingScheme& scheme);

// 8 payload bits per cover pixel.
std::uint64_t capacity_bits(int cover_width, int cover_height, const EmbeddingScheme& scheme);

// Embeds payload byte i into cover pixel i (row-major); pixels past the
// payload are copied unchanged. Throws InsufficientCapacity.
RasterImage embed_stream(const RasterImage& cover, std::span<const std::uint8_t> payload,
                         const EmbeddingScheme& scheme);

// Reads the 15-byte header from the leading pixels, validates it, then reads
// the declared body and reconstructs the secret image bit-exactly.
// Throws BadMagic (also on scheme mismatch), Truncated, UnsupportedVersion.
RasterImage extract_stream(const RasterImage& stego, const EmbeddingScheme& scheme);

}  // namespace stegkit
