#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rage/error.hpp"

namespace rage {

// Distortion of flipping one bit of significance m in k out of n chunks:
// each flipped chunk contributes (2^m)^2 to the squared error sum.
double binary_mse(uint64_t mapped_chunks, unsigned significance, uint64_t total_chunks);

// PSNR of a candidate mapping. max_significance is the highest exponent a
// channel bit can have (7 for 8-bit channels).
double prune_psnr(double bmse, unsigned max_significance);

// One pruning mapping that was performed.
struct PruneEvent {
    uint8_t pos = 0;            // bit position flipped
    uint32_t source_prefix = 0; // pruned leaf's path
    uint32_t target_prefix = 0; // surviving sibling's path
    uint64_t mapped_chunks = 0; // k
    double psnr = 0.0;
};

// Binary trie over selected bit positions. Leaves partition the chunk
// indices; the leaf count is the current base count and each leaf's prefix
// (one bit per expanded level, first level most significant) is the base
// value of its chunks. Mutated single-threaded during configuration, then
// read-only.
class BaseTree {
public:
    struct Leaf {
        uint32_t prefix = 0;
        std::vector<uint32_t> members;
    };

    struct BaseAssignment {
        std::vector<uint32_t> dictionary;  // base values in ID order
        std::vector<uint32_t> ids;         // chunk index -> base ID
    };

    BaseTree(std::span<const uint32_t> chunks, unsigned chunk_bits);

    size_t chunk_count() const { return original_.size(); }
    size_t base_count() const { return leaves_.size(); }  // n_b
    size_t height() const { return levels_.size(); }      // l_b so far
    const std::vector<uint8_t>& levels() const { return levels_; }
    const std::vector<Leaf>& leaves() const { return leaves_; }

    // Leaves that would split in two if `pos` were expanded. Read-only probe.
    size_t count_new_bases(unsigned pos) const;

    // Splits every leaf on the chunks' bit at `pos` (at most two children,
    // zero branch first).
    void expand(unsigned pos);

    // Lossy step, valid only directly after expand(pos): for every parent
    // that spawned two children at this level, the smaller child (tie: the
    // 1 branch) is mapped onto its sibling when the mapping's PSNR exceeds
    // psnr_thr. Mapped chunks get bit `pos` flipped and travel with the
    // target leaf from then on. Returns the mappings performed.
    std::vector<PruneEvent> prune_level(unsigned pos, double psnr_thr,
                                        unsigned max_significance = 7);

    uint32_t original_chunk(size_t i) const { return original_[i]; }
    // Original chunk with all recorded pruning flips applied.
    uint32_t effective_chunk(size_t i) const { return original_[i] ^ flip_mask_[i]; }
    uint32_t flip_mask(size_t i) const { return flip_mask_[i]; }

    // Base dictionary in first-occurrence (raster) order plus the total
    // chunk-to-ID assignment.
    BaseAssignment enumerate_bases() const;

private:
    void check_pos(unsigned pos) const;

    unsigned chunk_bits_;
    std::vector<uint32_t> original_;
    std::vector<uint32_t> flip_mask_;
    std::vector<uint8_t> levels_;
    std::vector<Leaf> leaves_;
    // Leaf index pairs (zero child, one child) created by the last expand.
    std::vector<std::pair<size_t, size_t>> last_siblings_;
    bool prune_done_ = false;
};

}  // namespace rage
