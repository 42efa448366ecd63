#include "rage/container.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

#include "rage/rle.hpp"
#include "rage/transform.hpp"

namespace rage {

namespace {

constexpr char kMagic[4] = {'R', 'A', 'G', 'E'};
constexpr uint8_t kVersion = 1;
constexpr uint8_t kFlagBpp32 = 1;
constexpr uint8_t kFlagLossy = 2;

uint64_t header_bytes(unsigned base_bits) {
    return 4 + 1 + 1 + 2 + 2 + 1 + base_bits + 4 + 4 + 4;
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(uint8_t(v));
    out.push_back(uint8_t(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(uint8_t(v >> (8 * i)));
}

}  // namespace

CompressedImage encode(const ImageBuffer& img, double psnr_thr) {
    const ConfigResult cfg = select_base_bits(img, psnr_thr);
    const BaseTree& tree = cfg.tree;
    const BitSelection& sel = cfg.config.selection;
    const unsigned ld = sel.deviation_bits();
    const unsigned lid = cfg.config.id_bits;
    const unsigned record_bits = lid + ld;
    const uint64_t w = img.width, h = img.height;

    const BaseTree::BaseAssignment assign = tree.enumerate_bases();

    CompressedImage comp;
    comp.version = kVersion;
    comp.flags = (img.bpp == 32 ? kFlagBpp32 : 0) |
                 (psnr_thr != kLossless ? kFlagLossy : 0);
    comp.width = img.width;
    comp.height = img.height;
    comp.selection = sel;
    comp.base_count = cfg.config.base_count;
    comp.dictionary = assign.dictionary;

    // Pair records double as RLE symbols: equal records mean equal
    // effective chunks, so runs coincide with pixel runs.
    BitWriter rle_bw, pair_bw;
    std::vector<uint64_t> row(w);
    uint64_t rle_bits = 0, pair_bits = 0;
    comp.offsets.reserve(h);
    for (uint64_t y = 0; y < h; ++y) {
        comp.offsets.push_back({static_cast<uint32_t>(pair_bits),
                                static_cast<uint32_t>(rle_bits)});
        for (uint64_t x = 0; x < w; ++x) {
            const size_t i = y * w + x;
            const uint32_t eff = tree.effective_chunk(i);
            row[x] = (uint64_t(assign.ids[i]) << ld) | split(eff, sel).deviation;
        }
        const RleSequence seq = rle_encode(row);
        for (uint16_t v : seq.values) pack_value(v, rle_bw);
        for (uint64_t rec : seq.symbols) pair_bw.put(rec, record_bits);
        rle_bits = rle_bw.bit_size();
        pair_bits = pair_bw.bit_size();
        if (rle_bits > std::numeric_limits<uint32_t>::max() ||
            pair_bits > std::numeric_limits<uint32_t>::max())
            throw ArgumentError("image exceeds container section limits");
    }
    comp.rle_stream_bits = static_cast<uint32_t>(rle_bits);
    comp.pair_stream_bits = static_cast<uint32_t>(pair_bits);
    rle_bw.align_to_byte();
    pair_bw.align_to_byte();
    comp.rle_stream = rle_bw.take();
    comp.pair_stream = pair_bw.take();
    return comp;
}

void validate_container_shape(const CompressedImage& comp) {
    comp.selection.validate();
    if (comp.width == 0 || comp.height == 0)
        throw CorruptError(CorruptError::Kind::bad_header_field, "zero dimension");
    if (comp.base_count == 0 || comp.dictionary.size() != comp.base_count)
        throw CorruptError(CorruptError::Kind::bad_header_field,
                           "dictionary size disagrees with base count");
    if (comp.offsets.size() != comp.height)
        throw CorruptError(CorruptError::Kind::bad_header_field,
                           "offset table size disagrees with height");
    if (comp.rle_stream.size() * 8 < comp.rle_stream_bits ||
        comp.pair_stream.size() * 8 < comp.pair_stream_bits)
        throw CorruptError(CorruptError::Kind::length_mismatch,
                           "stream buffer shorter than declared bits");
}

ImageBuffer decode(const CompressedImage& comp) {
    validate_container_shape(comp);
    const BitSelection& sel = comp.selection;
    const unsigned ld = sel.deviation_bits();
    const unsigned lid = comp.id_bits();
    const unsigned record_bits = lid + ld;
    const uint64_t w = comp.width, h = comp.height;
    const uint64_t dev_mask = ld == 0 ? 0 : (~uint64_t{0} >> (64 - ld));

    ImageBuffer img;
    img.width = comp.width;
    img.height = comp.height;
    img.bpp = comp.bpp();
    // Cap the reservation by what the RLE stream could possibly cover, so a
    // corrupt header cannot force a huge allocation.
    img.pixels.reserve(static_cast<size_t>(std::min<uint64_t>(
        w * h, uint64_t(comp.rle_stream_bits) / 4 * kMaxRunLength)));

    BitReader rle_r(comp.rle_stream, 0, comp.rle_stream_bits);
    BitReader pair_r(comp.pair_stream, 0, comp.pair_stream_bits);

    const auto read_chunk = [&]() -> uint32_t {
        const uint64_t rec = pair_r.get(record_bits);
        const uint64_t id = ld ? rec >> ld : rec;
        if (id >= comp.base_count)
            throw CorruptError(CorruptError::Kind::bad_base_id,
                               "base ID out of dictionary range");
        return merge(comp.dictionary[id], static_cast<uint32_t>(rec & dev_mask), sel);
    };

    for (uint64_t y = 0; y < h; ++y) {
        if (comp.offsets[y].pair_bit != pair_r.position() ||
            comp.offsets[y].rle_bit != rle_r.position())
            throw CorruptError(CorruptError::Kind::offset_mismatch,
                               "row offset disagrees with stream position");
        uint64_t covered = 0;
        while (covered < w) {
            const uint16_t r = unpack_value(rle_r);
            const uint16_t m = unpack_value(rle_r);
            if (r > 0) {
                covered += uint64_t(r) + 1;
                if (covered > w)
                    throw CorruptError(CorruptError::Kind::coverage_mismatch,
                                       "RLE run overruns row");
                img.pixels.insert(img.pixels.end(), size_t(r) + 1, read_chunk());
            }
            covered += m;
            if (covered > w)
                throw CorruptError(CorruptError::Kind::coverage_mismatch,
                                   "RLE group overruns row");
            for (uint16_t j = 0; j < m; ++j) img.pixels.push_back(read_chunk());
        }
    }
    if (rle_r.remaining() != 0 || pair_r.remaining() != 0)
        throw CorruptError(CorruptError::Kind::length_mismatch,
                           "trailing data after last row");
    return img;
}

std::vector<uint8_t> serialize(const CompressedImage& comp) {
    const unsigned lb = comp.selection.base_bits();
    std::vector<uint8_t> out;
    out.reserve(header_bytes(lb) + comp.rle_stream.size() + comp.pair_stream.size());
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(comp.version);
    out.push_back(comp.flags);
    put_u16(out, comp.width);
    put_u16(out, comp.height);
    out.push_back(static_cast<uint8_t>(lb));
    out.insert(out.end(), comp.selection.positions.begin(),
               comp.selection.positions.end());
    put_u32(out, comp.base_count);
    put_u32(out, comp.rle_stream_bits);
    put_u32(out, comp.pair_stream_bits);

    BitWriter section;
    for (uint32_t base : comp.dictionary) section.put(base, lb);
    section.align_to_byte();
    const unsigned wp = offset_width(comp.pair_stream_bits);
    const unsigned wr = offset_width(comp.rle_stream_bits);
    for (const auto& off : comp.offsets) {
        section.put(off.pair_bit, wp);
        section.put(off.rle_bit, wr);
    }
    section.align_to_byte();
    const std::vector<uint8_t> packed = section.take();
    out.insert(out.end(), packed.begin(), packed.end());
    out.insert(out.end(), comp.rle_stream.begin(), comp.rle_stream.end());
    out.insert(out.end(), comp.pair_stream.begin(), comp.pair_stream.end());
    return out;
}

CompressedImage deserialize(std::span<const uint8_t> bytes) {
    const auto need = [&](size_t at, size_t n) {
        if (at + n > bytes.size())
            throw CorruptError(CorruptError::Kind::length_mismatch,
                               "container truncated");
    };
    need(0, 11);
    if (!std::equal(kMagic, kMagic + 4, bytes.begin()))
        throw CorruptError(CorruptError::Kind::bad_magic, "bad magic, not a RAGE file");

    CompressedImage comp;
    comp.version = bytes[4];
    if (comp.version != kVersion)
        throw CorruptError(CorruptError::Kind::bad_version,
                           "unsupported version " + std::to_string(comp.version));
    comp.flags = bytes[5];
    if (comp.flags & ~uint8_t(kFlagBpp32 | kFlagLossy))
        throw CorruptError(CorruptError::Kind::bad_header_field, "unknown flag bits");
    comp.width = uint16_t(bytes[6]) | uint16_t(bytes[7]) << 8;
    comp.height = uint16_t(bytes[8]) | uint16_t(bytes[9]) << 8;
    if (comp.width == 0 || comp.height == 0)
        throw CorruptError(CorruptError::Kind::bad_header_field, "zero dimension");
    const unsigned lc = comp.bpp();
    const unsigned lb = bytes[10];
    if (lb > lc)
        throw CorruptError(CorruptError::Kind::bad_header_field,
                           "more base bits than chunk bits");
    need(11, lb + 12);
    comp.selection.chunk_bits = static_cast<uint8_t>(lc);
    comp.selection.positions.assign(bytes.begin() + 11, bytes.begin() + 11 + lb);
    try {
        comp.selection.validate();
    } catch (const ArgumentError& e) {
        throw CorruptError(CorruptError::Kind::bad_header_field, e.what());
    }
    size_t at = 11 + lb;
    const auto get_u32 = [&](size_t o) {
        return uint32_t(bytes[o]) | uint32_t(bytes[o + 1]) << 8 |
               uint32_t(bytes[o + 2]) << 16 | uint32_t(bytes[o + 3]) << 24;
    };
    comp.base_count = get_u32(at);
    comp.rle_stream_bits = get_u32(at + 4);
    comp.pair_stream_bits = get_u32(at + 8);
    at += 12;

    const uint64_t n = uint64_t(comp.width) * comp.height;
    if (comp.base_count == 0 || comp.base_count > n ||
        (lb < 32 && comp.base_count > (uint64_t{1} << lb)))
        throw CorruptError(CorruptError::Kind::bad_header_field,
                           "base count out of range");
    // Every row holds at least one (r, m) value pair.
    if (comp.rle_stream_bits < 8 * uint64_t(comp.height))
        throw CorruptError(CorruptError::Kind::bad_header_field,
                           "RLE stream too short for row count");
    const unsigned record_bits = id_width(comp.base_count) + (lc - lb);
    if (record_bits == 0 ? comp.pair_stream_bits != 0
                         : comp.pair_stream_bits % record_bits != 0)
        throw CorruptError(CorruptError::Kind::bad_header_field,
                           "pair stream not a whole number of records");

    // Validate the exact total length before allocating anything sized by
    // header fields.
    const uint64_t dict_bytes = (uint64_t(comp.base_count) * lb + 7) / 8;
    const unsigned wp = offset_width(comp.pair_stream_bits);
    const unsigned wr = offset_width(comp.rle_stream_bits);
    const uint64_t offset_bytes = (uint64_t(comp.height) * (wp + wr) + 7) / 8;
    const uint64_t rle_bytes = (uint64_t(comp.rle_stream_bits) + 7) / 8;
    const uint64_t pair_bytes = (uint64_t(comp.pair_stream_bits) + 7) / 8;
    const uint64_t expect =
        at + dict_bytes + offset_bytes + rle_bytes + pair_bytes;
    if (bytes.size() != expect)
        throw CorruptError(CorruptError::Kind::length_mismatch,
                           "container length mismatch");

    BitReader dict_r(bytes.subspan(at, dict_bytes));
    comp.dictionary.reserve(comp.base_count);
    for (uint32_t i = 0; i < comp.base_count; ++i)
        comp.dictionary.push_back(static_cast<uint32_t>(dict_r.get(lb)));
    at += dict_bytes;

    BitReader off_r(bytes.subspan(at, offset_bytes));
    comp.offsets.reserve(comp.height);
    for (uint32_t y = 0; y < comp.height; ++y) {
        CompressedImage::RowOffset off;
        off.pair_bit = static_cast<uint32_t>(off_r.get(wp));
        off.rle_bit = static_cast<uint32_t>(off_r.get(wr));
        if (off.pair_bit > comp.pair_stream_bits || off.rle_bit > comp.rle_stream_bits)
            throw CorruptError(CorruptError::Kind::bad_header_field,
                               "row offset beyond stream");
        comp.offsets.push_back(off);
    }
    at += offset_bytes;

    comp.rle_stream.assign(bytes.begin() + at, bytes.begin() + at + rle_bytes);
    at += rle_bytes;
    comp.pair_stream.assign(bytes.begin() + at, bytes.begin() + at + pair_bytes);
    return comp;
}

void write_rage(const CompressedImage& comp, const std::filesystem::path& path) {
    const std::vector<uint8_t> bytes = serialize(comp);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

CompressedImage read_rage(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

}  // namespace rage
