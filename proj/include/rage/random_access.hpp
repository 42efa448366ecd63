#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rage/container.hpp"

namespace rage {

// Rectangular pixel region, top-left corner (x, y).
struct QueryRect {
    uint32_t x = 0;
    uint32_t y = 0;
    uint32_t w = 1;
    uint32_t h = 1;
};

// Decodes exactly the requested region without touching the rest of the
// image: per row, the block offsets locate the row, the RLE values are
// accumulated up to the first needed column, and only the (id, d) records
// covering the span are fetched and merged. Returns rect.w * rect.h chunks
// in raster order. Throws BoundsError for rects outside the image.
std::vector<uint32_t> query(const CompressedImage& comp, const QueryRect& rect);

// query() wrapped into a standalone image of the region.
ImageBuffer query_image(const CompressedImage& comp, const QueryRect& rect);

struct AccessStats {
    uint64_t seek_ns_total = 0;
    uint64_t pixels_seeked = 0;
    uint64_t decode_ns_total = 0;
    uint64_t pixels_decoded = 0;

    std::optional<double> avg_seek_ns() const {
        if (pixels_seeked == 0) return std::nullopt;
        return double(seek_ns_total) / double(pixels_seeked);
    }
    std::optional<double> avg_decode_ns() const {
        if (pixels_decoded == 0) return std::nullopt;
        return double(decode_ns_total) / double(pixels_decoded);
    }
};

// Column sweep: queries of width 1, 2, ..., w anchored at the left edge and
// covering the full height. Each query runs in two phases over all rows —
// first offset reads plus RLE-value accumulation (seek), then pair fetches
// plus merges (decode) — timed separately with a monotonic clock after a
// warm-up pass. pixels_seeked counts the columns whose RLE values were
// accumulated while locating pair positions; pixels_decoded counts emitted
// pixels.
AccessStats measure_access(const CompressedImage& comp, unsigned repeats = 3);

}  // namespace rage
