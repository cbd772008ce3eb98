#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace stegkit {

// How the 8 secret bits of one cover pixel are split across R,G,B, and how
// wide the writable LSB window is. Two schemes ship: "233" (proposed) and
// "332" (baseline); both use a 4-bit window.
struct EmbeddingScheme {
    std::string_view id;
    int r_bits;
    int g_bits;
    int b_bits;
    int lsb_window;
    std::uint8_t wire_id;  // value stored in the payload header

    constexpr int bits_for_channel(int channel) const {
        return channel == 0 ? r_bits : channel == 1 ? g_bits : b_bits;
    }
    constexpr bool valid() const {
        return r_bits >= 0 && g_bits >= 0 && b_bits >= 0 && r_bits <= 8 && g_bits <= 8 &&
               b_bits <= 8 && r_bits + g_bits + b_bits == 8 && lsb_window >= 1 && lsb_window <= 8;
    }
};

inline constexpr EmbeddingScheme kScheme233{"233", 2, 3, 3, 4, 0x01};
inline constexpr EmbeddingScheme kScheme332{"332", 3, 3, 2, 4, 0x02};

static_assert(kScheme233.valid() && kScheme332.valid());

// Lookup by id ("233"/"332"); nullptr if unknown.
const EmbeddingScheme* find_scheme(std::string_view id);

// Lookup by payload-header wire id (0x01/0x02); nullptr if unknown.
const EmbeddingScheme* find_scheme_by_wire_id(std::uint8_t wire_id);

// Position rule: the k-th secret bit of a pixel (k = 1..8) lands
// at LSB position ((k-1) mod window) + 1, where position 1 is the least
// significant bit. Plain k % window would yield 0 at k = window; that case
// maps to the window size.
constexpr int hash_position(int k, int lsb_window) {
    return (k - 1) % lsb_window + 1;
}

// Per-channel bit positions, in the order the secret bits are consumed.
// "233" yields R:{1,2} G:{3,4,1} B:{2,3,4}; "332" yields R:{1,2,3} G:{4,1,2} B:{3,4}.
std::array<std::vector<int>, 3> position_schedule(const EmbeddingScheme& scheme);

}  // namespace stegkit
