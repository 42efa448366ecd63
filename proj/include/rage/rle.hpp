#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rage/bitstream.hpp"
#include "rage/error.hpp"

namespace rage {

// Stored r- and m-values live in [0, 135]: 4-bit packets carry [0, 8) and
// 8-bit packets carry [8, 136) after a -8 bias. The encoder splits anything
// longer so no stored value ever exceeds the cap.
constexpr uint16_t kMaxStoredValue = 135;
constexpr uint32_t kMaxRunLength = 136;   // stored r = length - 1
constexpr uint32_t kMaxGroupLength = 135; // stored m = length

// One encoded row block: `values` alternate (r1, m1, r2, m2, ...), always
// even length. A stored r > 0 denotes a run of r+1 equal symbols backed by
// one entry in `symbols`; r = 0 denotes no run. A stored m denotes a group
// of m adjacent pairwise-different symbols, each with its own entry.
struct RleSequence {
    std::vector<uint16_t> values;
    std::vector<uint64_t> symbols;
};

// Greedy left-to-right scan. Runs shorter than 2 are folded into groups;
// a run longer than 136 emits (135, 0) and restarts on the remainder.
// Throws ArgumentError on an empty row.
RleSequence rle_encode(std::span<const uint64_t> row);

// Inverse of rle_encode. Validates alternation arithmetic: total coverage
// must equal `width` and the symbol stream must be consumed exactly,
// otherwise CorruptError(coverage_mismatch). Values above 135 raise
// ArgumentError.
std::vector<uint64_t> rle_decode(const RleSequence& seq, size_t width);

// Where column x lives inside a values list, computed without touching any
// symbols.
struct SkipCursor {
    size_t value_index = 0;     // element containing column x
    size_t element_offset = 0;  // columns into that element
    size_t pairs_before = 0;    // (id, d) records strictly before column x's record
    bool in_run = false;
};

// Accumulates stored values until the element containing column x is found.
// pairs_before counts the symbols consumed by columns [0, x) — for a run
// that is the run's single symbol only once the run is fully passed.
// Throws BoundsError when x is at or past the total coverage.
SkipCursor skip_to(std::span<const uint16_t> values, size_t x);

// Packs one stored value: [0][v:3] when v < 8, else [1][v-8:7].
void pack_value(uint16_t v, BitWriter& out);

// Reads one packet; consumes 4 or 8 bits from `in`.
uint16_t unpack_value(BitReader& in);

}  // namespace rage
