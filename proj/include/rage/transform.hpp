#pragma once

#include <cstdint>
#include <vector>

#include "rage/error.hpp"

namespace rage {

// Ordered set of chunk bit positions allocated to bases. The order is the
// selection order: the first entry becomes the most significant base bit,
// which makes a base value equal to its root-to-leaf path in the BaseTree.
struct BitSelection {
    std::vector<uint8_t> positions;
    uint8_t chunk_bits = 24;  // l_c

    unsigned base_bits() const { return static_cast<unsigned>(positions.size()); }
    unsigned deviation_bits() const { return chunk_bits - base_bits(); }

    void validate() const {
        if (chunk_bits == 0 || chunk_bits > 32)
            throw ArgumentError("chunk width must be in [1, 32]");
        if (positions.size() > chunk_bits)
            throw ArgumentError("more base bits than chunk bits");
        uint32_t seen = 0;
        for (uint8_t p : positions) {
            if (p >= chunk_bits) throw ArgumentError("bit position exceeds chunk width");
            if (seen & (1u << p)) throw ArgumentError("duplicate bit position");
            seen |= 1u << p;
        }
    }

    // Bit mask of the selected positions.
    uint32_t base_mask() const {
        uint32_t m = 0;
        for (uint8_t p : positions) m |= 1u << p;
        return m;
    }

    bool operator==(const BitSelection&) const = default;
};

struct SplitChunk {
    uint32_t base = 0;       // selection-order bits, first selected is MSB
    uint32_t deviation = 0;  // unselected bits in descending position order
};

// Splits a chunk into (base, deviation) under `sel`. Total and bijective
// with merge for any valid selection.
inline SplitChunk split(uint32_t chunk, const BitSelection& sel) {
    SplitChunk out;
    for (uint8_t p : sel.positions)
        out.base = (out.base << 1) | ((chunk >> p) & 1u);
    const uint32_t mask = sel.base_mask();
    for (unsigned p = sel.chunk_bits; p-- > 0;) {
        if (!(mask & (1u << p)))
            out.deviation = (out.deviation << 1) | ((chunk >> p) & 1u);
    }
    return out;
}

// Inverse of split: scatters base and deviation bits back to their chunk
// positions.
inline uint32_t merge(uint32_t base, uint32_t deviation, const BitSelection& sel) {
    const unsigned lb = sel.base_bits();
    const unsigned ld = sel.deviation_bits();
    if (lb < 32 && (base >> lb))
        throw ArgumentError("base wider than selection");
    if (ld < 32 && (deviation >> ld))
        throw ArgumentError("deviation wider than selection");
    uint32_t chunk = 0;
    for (unsigned i = 0; i < lb; ++i) {
        const unsigned p = sel.positions[i];
        chunk |= ((base >> (lb - 1 - i)) & 1u) << p;
    }
    const uint32_t mask = sel.base_mask();
    unsigned di = 0;
    for (unsigned p = sel.chunk_bits; p-- > 0;) {
        if (!(mask & (1u << p))) {
            chunk |= ((deviation >> (ld - 1 - di)) & 1u) << p;
            ++di;
        }
    }
    return chunk;
}

}  // namespace rage
