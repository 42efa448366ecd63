#include "rage/rle.hpp"

namespace rage {

namespace {

// Length of the maximal equal run starting at i.
size_t run_length(std::span<const uint64_t> row, size_t i) {
    size_t len = 1;
    while (i + len < row.size() && row[i + len] == row[i]) ++len;
    return len;
}

// Length of the maximal stretch starting at i that contains no run of 2+.
// A position joins the group while it does not begin a run.
size_t group_length(std::span<const uint64_t> row, size_t i) {
    size_t j = i;
    while (j < row.size() && (j + 1 == row.size() || row[j] != row[j + 1])) ++j;
    return j - i;
}

}  // namespace

RleSequence rle_encode(std::span<const uint64_t> row) {
    if (row.empty()) throw ArgumentError("cannot RLE-encode an empty row");

    RleSequence seq;
    size_t i = 0;
    while (i < row.size()) {
        // r slot
        const size_t run = run_length(row, i);
        if (run > kMaxRunLength) {
            // Split: max-length run chunk plus an interleaving m = 0, then
            // rescan the remainder as a fresh r slot.
            seq.values.push_back(kMaxStoredValue);
            seq.symbols.push_back(row[i]);
            i += kMaxRunLength;
            seq.values.push_back(0);
            continue;
        }
        if (run >= 2) {
            seq.values.push_back(static_cast<uint16_t>(run - 1));
            seq.symbols.push_back(row[i]);
            i += run;
        } else {
            seq.values.push_back(0);
        }

        // m slot; 0 when a run starts here or the row is exhausted.
        const size_t group = i < row.size() ? group_length(row, i) : 0;
        const size_t take = group < kMaxGroupLength ? group : kMaxGroupLength;
        seq.values.push_back(static_cast<uint16_t>(take));
        for (size_t j = 0; j < take; ++j) seq.symbols.push_back(row[i + j]);
        i += take;
    }
    return seq;
}

std::vector<uint64_t> rle_decode(const RleSequence& seq, size_t width) {
    if (seq.values.size() % 2 != 0)
        throw ArgumentError("RLE values list must have even length");

    std::vector<uint64_t> row;
    row.reserve(width);
    size_t si = 0;
    for (size_t k = 0; k < seq.values.size(); k += 2) {
        const uint16_t r = seq.values[k];
        const uint16_t m = seq.values[k + 1];
        if (r > kMaxStoredValue || m > kMaxStoredValue)
            throw ArgumentError("stored RLE value exceeds 135");
        if (r > 0) {
            if (si >= seq.symbols.size())
                throw CorruptError(CorruptError::Kind::coverage_mismatch,
                                   "RLE symbol stream exhausted");
            row.insert(row.end(), size_t(r) + 1, seq.symbols[si++]);
        }
        for (uint16_t j = 0; j < m; ++j) {
            if (si >= seq.symbols.size())
                throw CorruptError(CorruptError::Kind::coverage_mismatch,
                                   "RLE symbol stream exhausted");
            row.push_back(seq.symbols[si++]);
        }
        if (row.size() > width)
            throw CorruptError(CorruptError::Kind::coverage_mismatch,
                               "RLE coverage exceeds row width");
    }
    if (row.size() != width)
        throw CorruptError(CorruptError::Kind::coverage_mismatch,
                           "RLE coverage short of row width");
    if (si != seq.symbols.size())
        throw CorruptError(CorruptError::Kind::coverage_mismatch,
                           "unused symbols in RLE sequence");
    return row;
}

SkipCursor skip_to(std::span<const uint16_t> values, size_t x) {
    size_t cover = 0;
    size_t pairs = 0;
    for (size_t idx = 0; idx < values.size(); ++idx) {
        const bool is_run = (idx % 2) == 0;
        const uint16_t v = values[idx];
        const size_t span = is_run ? (v > 0 ? size_t(v) + 1 : 0) : size_t(v);
        if (x < cover + span) {
            SkipCursor cur;
            cur.value_index = idx;
            cur.element_offset = x - cover;
            cur.in_run = is_run;
            cur.pairs_before = pairs + (is_run ? 0 : x - cover);
            return cur;
        }
        cover += span;
        pairs += is_run ? (v > 0 ? 1 : 0) : size_t(v);
    }
    throw BoundsError("column beyond RLE coverage");
}

void pack_value(uint16_t v, BitWriter& out) {
    if (v > kMaxStoredValue) throw ArgumentError("RLE value exceeds 135");
    if (v < 8) {
        out.put(v, 4);
    } else {
        out.put(0x80u | (v - 8u), 8);
    }
}

uint16_t unpack_value(BitReader& in) {
    const uint64_t flag = in.get(1);
    if (flag == 0) return static_cast<uint16_t>(in.get(3));
    return static_cast<uint16_t>(in.get(7) + 8);
}

}  // namespace rage
