#pragma once

#include <cstdint>
#include <span>

#include "rage/error.hpp"
#include "rage/rle.hpp"

namespace rage {

struct SizeBreakdown {
    uint64_t dict_bits = 0;    // n_b * l_b
    uint64_t rle_bits = 0;     // packed r/m values
    uint64_t pair_bits = 0;    // N_pairs * (l_id + l_d)
    uint64_t offset_bits = 0;  // h * (w_p + w_r)

    uint64_t total_bits() const {
        return dict_bits + rle_bits + pair_bits + offset_bits;
    }
};

// Packet size of one stored value: 4 bits below 8, 8 bits up to 135.
inline unsigned rle_value_size(uint16_t v) {
    if (v > kMaxStoredValue) throw ArgumentError("RLE value exceeds 135");
    return v < 8 ? 4 : 8;
}

// Packed size in bits of one row's values list (must be even length).
uint64_t s_rle(std::span<const uint16_t> values);
uint64_t s_rle(std::span<const RleSequence> sequences);

// Number of (id, d) records implied by a values list: one per nonzero r
// plus m per group.
uint64_t n_pairs(std::span<const uint16_t> values);
uint64_t n_pairs(std::span<const RleSequence> sequences);

inline uint64_t s_pairs(uint64_t pair_count, unsigned id_bits, unsigned deviation_bits) {
    return pair_count * (id_bits + deviation_bits);
}

// Width in bits of an offset into a stream of `stream_bits` bits,
// ceil(log2) floored at 1 so the field stays self-describing at 0 and 1.
unsigned offset_width(uint64_t stream_bits);

inline uint64_t s_offset(uint64_t height, uint64_t pair_stream_bits,
                         uint64_t rle_stream_bits) {
    return height * (offset_width(pair_stream_bits) + offset_width(rle_stream_bits));
}

// Full compressed-size model for one configuration.
SizeBreakdown total_size(uint64_t base_count, unsigned base_bits, unsigned id_bits,
                         unsigned deviation_bits, uint64_t height,
                         std::span<const RleSequence> sequences);

}  // namespace rage
