#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "rage/configurator.hpp"
#include "rage/image.hpp"
#include "rage/size_model.hpp"

namespace rage {

// In-memory compressed image. The dictionary and row offsets are kept
// decoded; the RLE and pair streams stay bit-packed (MSB-first) exactly as
// serialized. Immutable once built; concurrent queries are safe.
//
// Serialized layout (multi-byte fields little-endian):
//   magic "RAGE" | u8 version=1 | u8 flags (bit0: 32 bpp, bit1: lossy)
//   | u16 width | u16 height | u8 l_b | l_b x u8 selection order
//   | u32 n_b | u32 rle stream bits | u32 pair stream bits
// then four sections, each starting on a byte boundary, zero padded:
//   dictionary  n_b * l_b bits, ID order
//   offsets     height records of pair offset (w_p bits) then RLE offset
//               (w_r bits); widths are offset_width of the stream sizes
//   rle stream  packed r/m packets, rows concatenated
//   pair stream fixed-width (id, d) records, id bits above deviation bits
struct CompressedImage {
    struct RowOffset {
        uint32_t pair_bit = 0;
        uint32_t rle_bit = 0;
    };

    uint8_t version = 1;
    uint8_t flags = 0;
    uint16_t width = 0;
    uint16_t height = 0;
    BitSelection selection;
    uint32_t base_count = 0;
    uint32_t rle_stream_bits = 0;
    uint32_t pair_stream_bits = 0;

    std::vector<uint32_t> dictionary;
    std::vector<RowOffset> offsets;
    std::vector<uint8_t> rle_stream;
    std::vector<uint8_t> pair_stream;

    uint8_t bpp() const { return (flags & 1) ? 32 : 24; }
    bool lossy() const { return flags & 2; }
    unsigned id_bits() const { return id_width(base_count); }
    unsigned deviation_bits() const { return selection.chunk_bits - selection.base_bits(); }
    unsigned pair_record_bits() const { return id_bits() + deviation_bits(); }

    SizeBreakdown size_breakdown() const {
        SizeBreakdown b;
        b.dict_bits = uint64_t(base_count) * selection.base_bits();
        b.rle_bits = rle_stream_bits;
        b.pair_bits = pair_stream_bits;
        b.offset_bits = s_offset(height, pair_stream_bits, rle_stream_bits);
        return b;
    }

    // Section content bits; excludes the header and byte-alignment padding.
    uint64_t payload_bits() const { return size_breakdown().total_bits(); }
};

// Full compression pipeline: configure, transform, deduplicate, RLE each
// row, lay out streams. Deterministic for a given image and threshold.
CompressedImage encode(const ImageBuffer& img, double psnr_thr = kLossless);

// Full decompression. Streams rows sequentially and cross-checks each row
// start against the offset table. Bit-exact inverse of encode for lossless
// input; reproduces the effective (post-pruning) chunks for lossy input.
ImageBuffer decode(const CompressedImage& comp);

std::vector<uint8_t> serialize(const CompressedImage& comp);

// Validates the header and the exact byte length before allocating
// anything, so corrupt input fails with CorruptError instead of crashing.
CompressedImage deserialize(std::span<const uint8_t> bytes);

// Structural consistency of an in-memory container (section sizes versus
// header fields). decode and query run this up front.
void validate_container_shape(const CompressedImage& comp);

void write_rage(const CompressedImage& comp, const std::filesystem::path& path);
CompressedImage read_rage(const std::filesystem::path& path);

}  // namespace rage
