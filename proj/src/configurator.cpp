#include "rage/configurator.hpp"

#include <algorithm>
#include <bit>

#include "rage/rle.hpp"

namespace rage {

std::vector<uint8_t> find_constant_bits(std::span<const uint32_t> chunks,
                                        unsigned chunk_bits) {
    if (chunks.empty()) throw ArgumentError("no chunks");
    uint32_t ones = ~uint32_t{0};  // bits set in every chunk
    uint32_t zeros = ~uint32_t{0}; // bits clear in every chunk
    for (uint32_t c : chunks) {
        ones &= c;
        zeros &= ~c;
    }
    std::vector<uint8_t> out;
    for (unsigned p = 0; p < chunk_bits; ++p)
        if ((ones | zeros) & (1u << p)) out.push_back(static_cast<uint8_t>(p));
    return out;
}

unsigned id_width(uint64_t base_count) {
    if (base_count == 0) throw ArgumentError("base count must be positive");
    if (base_count == 1) return 0;
    return static_cast<unsigned>(std::bit_width(base_count - 1));
}

namespace {

// Exact per-level size estimate: real RLE over the current effective chunks
// of every row, then the size model. O(n) per call.
uint64_t exact_size(const BaseTree& tree, unsigned chunk_bits, uint64_t width,
                    uint64_t height) {
    const unsigned lb = static_cast<unsigned>(tree.height());
    const unsigned lid = id_width(tree.base_count());
    const unsigned ld = chunk_bits - lb;

    uint64_t rle_bits = 0;
    uint64_t pair_count = 0;
    std::vector<uint64_t> row(width);
    for (uint64_t y = 0; y < height; ++y) {
        for (uint64_t x = 0; x < width; ++x)
            row[x] = tree.effective_chunk(y * width + x);
        const RleSequence seq = rle_encode(row);
        rle_bits += s_rle(seq.values);
        pair_count += n_pairs(seq.values);
    }
    const uint64_t pair_bits = s_pairs(pair_count, lid, ld);
    return tree.base_count() * lb + rle_bits + pair_bits +
           s_offset(height, pair_bits, rle_bits);
}

}  // namespace

uint64_t estimate_level_size(const BaseTree& tree, unsigned chunk_bits,
                             uint64_t width, uint64_t height) {
    return exact_size(tree, chunk_bits, width, height);
}

ConfigResult select_base_bits(const ImageBuffer& img, double psnr_thr) {
    img.validate();
    if (!(psnr_thr > 0))
        throw ArgumentError("psnr_thr must be positive or infinite");
    const unsigned lc = img.bpp;
    const uint64_t w = img.width, h = img.height;
    const bool lossy = psnr_thr != kLossless;

    BaseTree tree(img.pixels, lc);
    std::vector<uint8_t> order = find_constant_bits(img.pixels, lc);
    for (uint8_t pos : order) {
        tree.expand(pos);
        if (lossy) tree.prune_level(pos, psnr_thr);
    }

    // In lossless mode runs of equal (id, d) pairs are runs of equal chunks
    // at every selection (the transform is bijective), so the RLE structure
    // is computed once and only the pair width varies per level.
    uint64_t fixed_rle_bits = 0;
    uint64_t fixed_pair_count = 0;
    if (!lossy) {
        std::vector<uint64_t> row(w);
        for (uint64_t y = 0; y < h; ++y) {
            for (uint64_t x = 0; x < w; ++x) row[x] = img.pixels[y * w + x];
            const RleSequence seq = rle_encode(row);
            fixed_rle_bits += s_rle(seq.values);
            fixed_pair_count += n_pairs(seq.values);
        }
    }

    const auto level_size = [&]() -> uint64_t {
        if (lossy) return exact_size(tree, lc, w, h);
        const unsigned lb = static_cast<unsigned>(tree.height());
        const uint64_t pair_bits =
            s_pairs(fixed_pair_count, id_width(tree.base_count()), lc - lb);
        return tree.base_count() * lb + fixed_rle_bits + pair_bits +
               s_offset(h, pair_bits, fixed_rle_bits);
    };

    uint32_t in_order = 0;
    for (uint8_t pos : order) in_order |= 1u << pos;

    std::vector<LevelTrace> trace;
    uint64_t best_size = std::numeric_limits<uint64_t>::max();
    size_t best_len = order.size();
    while (order.size() < lc) {
        unsigned pick = lc;
        size_t pick_cost = std::numeric_limits<size_t>::max();
        for (unsigned pos = 0; pos < lc; ++pos) {
            if (in_order & (1u << pos)) continue;
            const size_t cost = tree.count_new_bases(pos);
            if (cost < pick_cost) {
                pick_cost = cost;
                pick = pos;
            }
        }
        tree.expand(pick);
        if (lossy) tree.prune_level(pick, psnr_thr);
        order.push_back(static_cast<uint8_t>(pick));
        in_order |= 1u << pick;

        const uint64_t local = level_size();
        trace.push_back({static_cast<uint8_t>(pick),
                         static_cast<uint32_t>(tree.base_count()), local});
        if (local < best_size) {
            best_size = local;
            best_len = order.size();
        }
    }

    ConfigResult result{
        RageConfig{}, std::move(tree), std::move(trace)};
    order.resize(best_len);
    if (best_len != result.tree.levels().size()) {
        // Replay for the winning prefix so pruning at discarded levels does
        // not leak into the final assignment.
        BaseTree replay(img.pixels, lc);
        for (uint8_t pos : order) {
            replay.expand(pos);
            if (lossy) replay.prune_level(pos, psnr_thr);
        }
        result.tree = std::move(replay);
    }

    RageConfig& cfg = result.config;
    cfg.selection = BitSelection{std::move(order), static_cast<uint8_t>(lc)};
    cfg.base_count = static_cast<uint32_t>(result.tree.base_count());
    cfg.id_bits = static_cast<uint8_t>(id_width(cfg.base_count));
    cfg.psnr_thr = psnr_thr;
    cfg.estimated_bits = best_size != std::numeric_limits<uint64_t>::max()
                             ? best_size
                             : exact_size(result.tree, lc, w, h);
    return result;
}

}  // namespace rage
