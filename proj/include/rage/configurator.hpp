#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "rage/basetree.hpp"
#include "rage/image.hpp"
#include "rage/size_model.hpp"
#include "rage/transform.hpp"

namespace rage {

constexpr double kLossless = std::numeric_limits<double>::infinity();

// Resolved codec configuration for one image.
struct RageConfig {
    BitSelection selection;   // B_best, in selection order
    uint32_t base_count = 0;  // n_b
    uint8_t id_bits = 0;      // ceil(log2 n_b), 0 when n_b = 1
    double psnr_thr = kLossless;
    uint64_t estimated_bits = 0;  // size model total at this configuration
};

// One greedy iteration, for diagnostics and tests.
struct LevelTrace {
    uint8_t pos = 0;
    uint32_t base_count = 0;
    uint64_t estimated_bits = 0;
};

struct ConfigResult {
    RageConfig config;
    BaseTree tree;  // re-derived for exactly the selected bits
    std::vector<LevelTrace> trace;
};

// Bit positions holding the same value in every chunk, ascending.
std::vector<uint8_t> find_constant_bits(std::span<const uint32_t> chunks,
                                        unsigned chunk_bits);

// ceil(log2 n_b); 0 for a single base. Throws ArgumentError on 0.
unsigned id_width(uint64_t base_count);

// Greedy base-bit selection: seed with constant bits, then repeatedly add
// the position spawning the fewest new bases (ties to the lowest index),
// estimating the compressed size after each level and keeping the best
// prefix. A finite psnr_thr interleaves tree pruning after every expansion.
// The returned tree replays expansion (and pruning) for the winning prefix
// only, so decisions at discarded levels never leak into the output.
ConfigResult select_base_bits(const ImageBuffer& img, double psnr_thr = kLossless);

// Size-model evaluation used per greedy level, exposed for tests that
// cross-check the lossless fast path against a full re-encode.
uint64_t estimate_level_size(const BaseTree& tree, unsigned chunk_bits,
                             uint64_t width, uint64_t height);

}  // namespace rage
