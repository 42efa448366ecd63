#include "rage/random_access.hpp"

#include <chrono>

#include "rage/rle.hpp"
#include "rage/transform.hpp"

namespace rage {

namespace {

// Resumable position of the RLE element containing the query's first
// column of one row.
struct RowSeek {
    uint32_t value_bit = 0;     // element start within the RLE stream
    uint32_t col = 0;           // column where the element begins
    uint32_t pairs_before = 0;  // records preceding the element
    uint32_t covered = 0;       // columns covered by the values accumulated
    bool in_run = false;
};

// Step (1) read block offsets and (2) accumulate RLE values until the
// element containing column x0 is found. Never touches the pair stream.
RowSeek seek_row(const CompressedImage& comp, uint32_t y, uint32_t x0) {
    const auto off = comp.offsets[y];
    BitReader vr(comp.rle_stream, off.rle_bit, comp.rle_stream_bits);
    uint32_t col = 0;
    uint32_t pairs = 0;
    bool is_run = true;
    for (;;) {
        const uint32_t elem_bit = static_cast<uint32_t>(vr.position());
        const uint16_t v = unpack_value(vr);
        const uint32_t span = is_run ? (v > 0 ? uint32_t(v) + 1 : 0) : v;
        if (x0 < col + span)
            return {elem_bit, col, pairs, col + span, is_run};
        col += span;
        pairs += is_run ? (v > 0 ? 1 : 0) : v;
        if (col > comp.width)
            throw CorruptError(CorruptError::Kind::coverage_mismatch,
                               "RLE coverage overruns row");
        is_run = !is_run;
    }
}

// Step (3): fetch the (id, d) records covering columns [x0, x1) and merge
// them into chunks. Reads no pair bits before the first or after the last
// needed record of the row.
void emit_span(const CompressedImage& comp, uint32_t y, const RowSeek& seek,
               uint32_t x0, uint32_t x1, uint32_t* out) {
    const BitSelection& sel = comp.selection;
    const unsigned ld = sel.deviation_bits();
    const unsigned record_bits = comp.pair_record_bits();
    const uint64_t dev_mask = ld == 0 ? 0 : (~uint64_t{0} >> (64 - ld));

    BitReader vr(comp.rle_stream, seek.value_bit, comp.rle_stream_bits);
    BitReader pr(comp.pair_stream, 0, comp.pair_stream_bits);
    const uint64_t pair_base = comp.offsets[y].pair_bit;

    const auto read_chunk = [&]() -> uint32_t {
        const uint64_t rec = pr.get(record_bits);
        const uint64_t id = ld ? rec >> ld : rec;
        if (id >= comp.base_count)
            throw CorruptError(CorruptError::Kind::bad_base_id,
                               "base ID out of dictionary range");
        return merge(comp.dictionary[id], static_cast<uint32_t>(rec & dev_mask), sel);
    };

    uint32_t col = seek.col;
    uint32_t next = x0;  // next column to emit
    bool is_run = seek.in_run;
    bool first = true;
    while (next < x1) {
        const uint16_t v = unpack_value(vr);
        const uint32_t span = is_run ? (v > 0 ? uint32_t(v) + 1 : 0) : v;
        const uint32_t lo = next > col ? next : col;
        const uint32_t hi = col + span < x1 ? col + span : x1;
        if (is_run && v > 0) {
            if (first) {
                pr.seek(pair_base + uint64_t(seek.pairs_before) * record_bits);
                first = false;
            }
            // One record replicated across every covered column.
            const uint32_t chunk = read_chunk();
            for (uint32_t c = lo; c < hi; ++c) out[c - x0] = chunk;
        } else if (!is_run && v > 0) {
            if (first) {
                pr.seek(pair_base +
                        uint64_t(seek.pairs_before + (lo - col)) * record_bits);
                first = false;
            }
            for (uint32_t c = lo; c < hi; ++c) out[c - x0] = read_chunk();
        }
        if (span > 0) next = hi;
        col += span;
        if (col > comp.width)
            throw CorruptError(CorruptError::Kind::coverage_mismatch,
                               "RLE coverage overruns row");
        is_run = !is_run;
    }
}

void check_rect(const CompressedImage& comp, const QueryRect& rect) {
    if (rect.w == 0 || rect.h == 0)
        throw BoundsError("query rect must have positive size");
    if (uint64_t(rect.x) + rect.w > comp.width ||
        uint64_t(rect.y) + rect.h > comp.height)
        throw BoundsError("query rect exceeds image bounds");
}

}  // namespace

std::vector<uint32_t> query(const CompressedImage& comp, const QueryRect& rect) {
    validate_container_shape(comp);
    check_rect(comp, rect);
    std::vector<uint32_t> out(size_t(rect.w) * rect.h);
    for (uint32_t r = 0; r < rect.h; ++r) {
        const uint32_t y = rect.y + r;
        const RowSeek seek = seek_row(comp, y, rect.x);
        emit_span(comp, y, seek, rect.x, rect.x + rect.w,
                  out.data() + size_t(r) * rect.w);
    }
    return out;
}

ImageBuffer query_image(const CompressedImage& comp, const QueryRect& rect) {
    ImageBuffer img;
    img.width = static_cast<uint16_t>(rect.w);
    img.height = static_cast<uint16_t>(rect.h);
    img.bpp = comp.bpp();
    img.pixels = query(comp, rect);
    return img;
}

AccessStats measure_access(const CompressedImage& comp, unsigned repeats) {
    using clock = std::chrono::steady_clock;
    validate_container_shape(comp);
    const uint32_t w = comp.width, h = comp.height;

    AccessStats stats;
    std::vector<RowSeek> seeks(h);
    std::vector<uint32_t> out(size_t(w) * h);
    volatile uint32_t sink = 0;

    // Warm-up: one full-frame query untimed.
    (void)query(comp, {0, 0, w, h});

    for (unsigned rep = 0; rep < repeats; ++rep) {
        for (uint32_t k = 1; k <= w; ++k) {
            const auto t0 = clock::now();
            for (uint32_t y = 0; y < h; ++y) seeks[y] = seek_row(comp, y, 0);
            const auto t1 = clock::now();
            for (uint32_t y = 0; y < h; ++y)
                emit_span(comp, y, seeks[y], 0, k, out.data() + size_t(y) * k);
            const auto t2 = clock::now();

            stats.seek_ns_total +=
                std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
            stats.decode_ns_total +=
                std::chrono::duration_cast<std::chrono::nanoseconds>(t2 - t1).count();
            for (uint32_t y = 0; y < h; ++y) stats.pixels_seeked += seeks[y].covered;
            stats.pixels_decoded += uint64_t(k) * h;
            sink = sink ^ out[0] ^ out[size_t(k) * h - 1];
        }
    }
    (void)sink;
    return stats;
}

}  // namespace rage
