#include "stegkit/scheme.hpp"

namespace stegkit {

const EmbeddingScheme* find_scheme(std::string_view id) {
    if (id == kScheme233.id) return &kScheme233;
    if (id == kScheme332.id) return &kScheme332;
    return nullptr;
}

const EmbeddingScheme* find_scheme_by_wire_id(std::uint8_t wire_id) {
    if (wire_id == kScheme233.wire_id) return &kScheme233;
    if (wire_id == kScheme332.wire_id) return &kScheme332;
    return nullptr;
}

std::array<std::vector<int>, 3> position_schedule(const EmbeddingScheme& scheme) {
    std::array<std::vector<int>, 3> schedule;
    int k = 1;
    for (int channel = 0; channel < 3; ++channel) {
        for (int i = 0; i < scheme.bits_for_channel(channel); ++i, ++k) {
            schedule[channel].push_back(hash_position(k, scheme.lsb_window));
        }
    }
    return schedule;
}

}  // namespace stegkit
