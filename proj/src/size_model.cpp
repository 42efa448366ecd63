#include "rage/size_model.hpp"

#include <bit>

namespace rage {

uint64_t s_rle(std::span<const uint16_t> values) {
    if (values.size() % 2 != 0)
        throw ArgumentError("RLE values list must have even length");
    uint64_t bits = 0;
    for (uint16_t v : values) bits += rle_value_size(v);
    return bits;
}

uint64_t s_rle(std::span<const RleSequence> sequences) {
    uint64_t bits = 0;
    for (const RleSequence& seq : sequences) bits += s_rle(seq.values);
    return bits;
}

uint64_t n_pairs(std::span<const uint16_t> values) {
    if (values.size() % 2 != 0)
        throw ArgumentError("RLE values list must have even length");
    uint64_t count = 0;
    for (size_t k = 0; k + 1 < values.size(); k += 2)
        count += (values[k] != 0 ? 1 : 0) + values[k + 1];
    return count;
}

uint64_t n_pairs(std::span<const RleSequence> sequences) {
    uint64_t count = 0;
    for (const RleSequence& seq : sequences) count += n_pairs(seq.values);
    return count;
}

unsigned offset_width(uint64_t stream_bits) {
    if (stream_bits <= 1) return 1;
    return static_cast<unsigned>(std::bit_width(stream_bits - 1));
}

SizeBreakdown total_size(uint64_t base_count, unsigned base_bits, unsigned id_bits,
                         unsigned deviation_bits, uint64_t height,
                         std::span<const RleSequence> sequences) {
    SizeBreakdown out;
    out.dict_bits = base_count * base_bits;
    out.rle_bits = s_rle(sequences);
    out.pair_bits = s_pairs(n_pairs(sequences), id_bits, deviation_bits);
    out.offset_bits = s_offset(height, out.pair_bits, out.rle_bits);
    return out;
}

}  // namespace rage
