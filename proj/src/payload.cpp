#include "stegkit/payload.hpp"

#include <algorithm>
#include <cstring>

#include "stegkit/errors.hpp"

namespace stegkit {

namespace {

void put_u32_be(std::uint8_t* out, std::uint32_t v) {
    out[0] = static_cast<std::uint8_t>(v >> 24);
    out[1] = static_cast<std::uint8_t>(v >> 16);
    out[2] = static_cast<std::uint8_t>(v >> 8);
    out[3] = static_cast<std::uint8_t>(v);
}

std::uint32_t get_u32_be(const std::uint8_t* in) {
    return (static_cast<std::uint32_t>(in[0]) << 24) | (static_cast<std::uint32_t>(in[1]) << 16) |
           (static_cast<std::uint32_t>(in[2]) << 8) | static_cast<std::uint32_t>(in[3]);
}

}  // namespace

std::array<std::uint8_t, PayloadHeader::kSize> serialize_header(const PayloadHeader& header) {
    std::array<std::uint8_t, PayloadHeader::kSize> out{};
    std::copy(PayloadHeader::kMagic.begin(), PayloadHeader::kMagic.end(), out.begin());
    out[4] = PayloadHeader::kVersion;
    out[5] = header.scheme_wire_id;
    put_u32_be(&out[6], header.width);
    put_u32_be(&out[10], header.height);
    out[14] = header.channels;
    return out;
}

PayloadHeader parse_header(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < PayloadHeader::kSize) {
        throw Truncated("payload shorter than the 15-byte header");
    }
    if (!std::equal(PayloadHeader::kMagic.begin(), PayloadHeader::kMagic.end(), bytes.begin())) {
        throw BadMagic("bad magic: not a stegkit payload or wrong extraction scheme");
    }
    if (bytes[4] != PayloadHeader::kVersion) {
        throw UnsupportedVersion("unsupported payload version " + std::to_string(bytes[4]));
    }
    PayloadHeader header;
    header.scheme_wire_id = bytes[5];
    header.width = get_u32_be(&bytes[6]);
    header.height = get_u32_be(&bytes[10]);
    header.channels = bytes[14];
    if (find_scheme_by_wire_id(header.scheme_wire_id) == nullptr) {
        throw BadMagic("unknown scheme id in payload header");
    }
    if (header.channels != 3 || header.width == 0 || header.height == 0) {
        throw BadMagic("malformed payload header");
    }
    return header;
}

StegoPayload build_payload(const RasterImage& secret, const EmbeddingScheme& scheme) {
    StegoPayload payload;
    payload.header.scheme_wire_id = scheme.wire_id;
    payload.header.width = static_cast<std::uint32_t>(secret.width);
    payload.header.height = static_cast<std::uint32_t>(secret.height);
    payload.header.channels = 3;
    payload.body = secret.pixels;  // already row-major R,G,B interleaved
    return payload;
}

std::vector<std::uint8_t> serialize_payload(const StegoPayload& payload) {
    auto header = serialize_header(payload.header);
    std::vector<std::uint8_t> out;
    out.reserve(header.size() + payload.body.size());
    out.insert(out.end(), header.begin(), header.end());
    out.insert(out.end(), payload.body.begin(), payload.body.end());
    return out;
}

StegoPayload parse_payload(std::span<const std::uint8_t> bytes) {
    StegoPayload payload;
    payload.header = parse_header(bytes);
    const std::uint64_t body_bytes = payload.header.body_bytes();
    if (bytes.size() - PayloadHeader::kSize < body_bytes) {
        throw Truncated("payload body truncated: header declares " + std::to_string(body_bytes) +
                        " bytes, " + std::to_string(bytes.size() - PayloadHeader::kSize) +
                        " available");
    }
    payload.body.assign(bytes.begin() + PayloadHeader::kSize,
                        bytes.begin() + PayloadHeader::kSize + static_cast<std::size_t>(body_bytes));
    return payload;
}

}  // namespace stegkit
