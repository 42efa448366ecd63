#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "rage/configurator.hpp"

using namespace rage;

namespace {

ImageBuffer image_of(uint16_t w, uint16_t h, uint8_t bpp,
                     std::vector<uint32_t> pixels) {
    ImageBuffer img;
    img.width = w;
    img.height = h;
    img.bpp = bpp;
    img.pixels = std::move(pixels);
    return img;
}

}  // namespace

TEST_CASE("find_constant_bits scans columns") {
    CHECK(find_constant_bits(std::vector<uint32_t>{0b1010, 0b1011, 0b1000}, 4) ==
          std::vector<uint8_t>{2, 3});
    CHECK(find_constant_bits(std::vector<uint32_t>{0b1010}, 4) ==
          std::vector<uint8_t>{0, 1, 2, 3});
    CHECK(find_constant_bits(std::vector<uint32_t>{0b00, 0b11}, 2).empty());
}

TEST_CASE("id_width is ceil(log2) with a zero floor") {
    CHECK(id_width(1) == 0);
    CHECK(id_width(2) == 1);
    CHECK(id_width(6) == 3);
    CHECK(id_width(256) == 8);
    CHECK(id_width(257) == 9);
    CHECK_THROWS_AS(id_width(0), ArgumentError);
}

TEST_CASE("single-color image selects every bit through the constant path") {
    const ImageBuffer img = image_of(10, 10, 24, std::vector<uint32_t>(100, 0x336699));
    const ConfigResult r = select_base_bits(img);
    CHECK(r.config.selection.positions.size() == 24);
    CHECK(r.config.base_count == 1);
    CHECK(r.config.id_bits == 0);
    CHECK(r.trace.empty());
    // dict 24, RLE 10 rows of (9, 0) = 10 * 12, pairs 0, offsets 10 * (1 + 7).
    CHECK(r.config.estimated_bits == 24 + 120 + 0 + 80);
}

TEST_CASE("greedy pick minimizes spawned bases with low-index ties") {
    const ImageBuffer img =
        image_of(4, 1, 24, {0x000001, 0x000003, 0x000001, 0x000007});
    const ConfigResult r = select_base_bits(img);
    // Constants everywhere except bits 1 and 2; both spawn one new base, so
    // the first greedy pick is bit 1.
    REQUIRE_FALSE(r.trace.empty());
    CHECK(r.trace[0].pos == 1);
}

TEST_CASE("four-bit worked trace via a miniature image") {
    // Same chunk set as the hand trace, embedded in the low bits of a 24 bpp
    // pixel row: constants are everything but bits 1 and 2.
    const ImageBuffer img =
        image_of(4, 1, 24, {0x000001, 0x000003, 0x000001, 0x000007});
    const ConfigResult r = select_base_bits(img);
    const auto& order = r.config.selection.positions;
    // Selection starts from the 22 constant bits in ascending order.
    std::set<uint8_t> constants(order.begin(), order.end());
    CHECK(constants.count(0) == 1);
    CHECK(constants.count(3) == 1);
    for (size_t i = 0; i + 1 < order.size(); ++i) {
        const bool both_constant = order[i] != 1 && order[i] != 2 &&
                                   order[i + 1] != 1 && order[i + 1] != 2;
        if (both_constant) CHECK(order[i] < order[i + 1]);
    }
}

TEST_CASE("global best never exceeds any level estimate") {
    std::mt19937 rng(41);
    for (int it = 0; it < 10; ++it) {
        const ImageBuffer img = testutil::random_image(
            rng, uint16_t(1 + rng() % 24), uint16_t(1 + rng() % 24),
            (it % 2) ? 32 : 24, 1 + rng() % 40);
        const ConfigResult r = select_base_bits(img);
        for (const LevelTrace& lt : r.trace)
            CHECK(r.config.estimated_bits <= lt.estimated_bits);
    }
}

TEST_CASE("configuration is deterministic") {
    std::mt19937 rng(43);
    const ImageBuffer img = testutil::random_image(rng, 20, 20, 24, 15);
    const ConfigResult a = select_base_bits(img, 30.0);
    const ConfigResult b = select_base_bits(img, 30.0);
    CHECK(a.config.selection == b.config.selection);
    CHECK(a.config.base_count == b.config.base_count);
    CHECK(a.config.estimated_bits == b.config.estimated_bits);
}

TEST_CASE("expanding all bits matches the distinct-chunk oracle") {
    std::mt19937 rng(47);
    for (int it = 0; it < 6; ++it) {
        const ImageBuffer img = testutil::random_image(rng, 16, 16, 24, 200);
        const ConfigResult r = select_base_bits(img);
        if (r.config.selection.positions.size() == 24) {
            const std::set<uint32_t> distinct(img.pixels.begin(), img.pixels.end());
            CHECK(r.config.base_count == distinct.size());
        }
        // The tree always re-derives exactly the winning selection.
        CHECK(r.tree.levels() == r.config.selection.positions);
        CHECK(r.tree.base_count() == r.config.base_count);
    }
}

TEST_CASE("lossless fast path matches the exact per-level estimator") {
    std::mt19937 rng(53);
    for (int it = 0; it < 5; ++it) {
        const ImageBuffer img = testutil::random_image(rng, 12, 9, 24, 10);
        const ConfigResult r = select_base_bits(img);
        // Replay the greedy order, cross-checking every level's estimate
        // against the exhaustive evaluator.
        BaseTree replay(img.pixels, 24);
        std::vector<uint8_t> greedy;
        for (const LevelTrace& lt : r.trace) greedy.push_back(lt.pos);
        const auto constants = find_constant_bits(img.pixels, 24);
        for (uint8_t p : constants) replay.expand(p);
        size_t li = 0;
        for (uint8_t p : greedy) {
            replay.expand(p);
            CHECK(estimate_level_size(replay, 24, img.width, img.height) ==
                  r.trace[li++].estimated_bits);
        }
    }
}

TEST_CASE("psnr_thr must be positive") {
    const ImageBuffer img = image_of(1, 1, 24, {0x123456});
    CHECK_THROWS_AS(select_base_bits(img, 0.0), ArgumentError);
    CHECK_THROWS_AS(select_base_bits(img, -3.0), ArgumentError);
}
