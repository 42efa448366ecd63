#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "rage/basetree.hpp"
#include "rage/transform.hpp"

using namespace rage;

namespace {

std::vector<uint32_t> chunks_of(std::initializer_list<uint32_t> v) { return v; }

// Members of every leaf must partition the chunk index set.
void check_partition(const BaseTree& tree) {
    std::set<uint32_t> seen;
    size_t total = 0;
    for (const auto& leaf : tree.leaves()) {
        total += leaf.members.size();
        seen.insert(leaf.members.begin(), leaf.members.end());
    }
    CHECK(total == tree.chunk_count());
    CHECK(seen.size() == tree.chunk_count());
}

}  // namespace

TEST_CASE("new tree starts with a single root leaf") {
    const BaseTree tree(chunks_of({1, 2, 3, 4, 5}), 8);
    CHECK(tree.base_count() == 1);
    CHECK(tree.height() == 0);
    CHECK(tree.leaves()[0].members == std::vector<uint32_t>{0, 1, 2, 3, 4});
    CHECK_THROWS_AS(BaseTree(std::vector<uint32_t>{}, 8), ArgumentError);
}

TEST_CASE("count_new_bases probes without mutating") {
    BaseTree tree(chunks_of({0b00, 0b01, 0b10, 0b11}), 2);
    CHECK(tree.count_new_bases(1) == 1);
    tree.expand(1);
    CHECK(tree.count_new_bases(0) == 2);
    CHECK(tree.base_count() == 2);  // probe did not mutate

    BaseTree fresh(chunks_of({0b0, 0b1}), 1);
    CHECK(fresh.count_new_bases(0) == 1);

    BaseTree constant(chunks_of({0b10, 0b10, 0b11}), 2);
    CHECK(constant.count_new_bases(1) == 0);
    CHECK_THROWS_AS(tree.count_new_bases(1), ArgumentError);
}

TEST_CASE("expand splits leaves by bit value, zero branch first") {
    BaseTree tree(chunks_of({0b10, 0b11, 0b00}), 2);
    tree.expand(1);
    REQUIRE(tree.base_count() == 2);
    CHECK(tree.leaves()[0].prefix == 0);
    CHECK(tree.leaves()[0].members == std::vector<uint32_t>{2});
    CHECK(tree.leaves()[1].prefix == 1);
    CHECK(tree.leaves()[1].members == std::vector<uint32_t>{0, 1});

    tree.expand(0);
    REQUIRE(tree.base_count() == 3);
    CHECK(tree.leaves()[0].prefix == 0b00);
    CHECK(tree.leaves()[1].prefix == 0b10);
    CHECK(tree.leaves()[1].members == std::vector<uint32_t>{0});
    CHECK(tree.leaves()[2].prefix == 0b11);
    CHECK(tree.leaves()[2].members == std::vector<uint32_t>{1});
    check_partition(tree);
    CHECK_THROWS_AS(tree.expand(1), ArgumentError);
}

TEST_CASE("expanding a constant bit keeps the base count") {
    BaseTree tree(chunks_of({0b10, 0b11}), 2);
    tree.expand(1);
    CHECK(tree.base_count() == 1);
    CHECK(tree.leaves()[0].prefix == 1);
}

TEST_CASE("expanding all positions reaches the distinct-chunk count") {
    std::mt19937 rng(3);
    for (int it = 0; it < 30; ++it) {
        const unsigned lc = 1 + rng() % 12;
        std::vector<uint32_t> chunks(1 + rng() % 200);
        for (auto& c : chunks) c = rng() & ((1u << lc) - 1);

        BaseTree tree(chunks, lc);
        for (unsigned p = 0; p < lc; ++p) tree.expand(p);

        // Brute-force oracle.
        const std::set<uint32_t> distinct(chunks.begin(), chunks.end());
        CHECK(tree.base_count() == distinct.size());
        check_partition(tree);
    }
}

TEST_CASE("worked pruning cost: n=8, k=2, m=2 gives 36.12 dB") {
    const double bmse = binary_mse(2, 2, 8);
    CHECK(bmse == doctest::Approx(4.0).epsilon(1e-12));
    const double psnr = prune_psnr(bmse, 7);
    CHECK(psnr == doctest::Approx(36.1235994796777).epsilon(1e-9));

    // 6 chunks of 0x00 and 2 of 0x04 split on bit 2 (significance 2).
    std::vector<uint32_t> chunks(8, 0x00);
    chunks[3] = chunks[6] = 0x04;

    // Threshold 30: the mapping is performed.
    BaseTree t30(chunks, 8);
    t30.expand(2);
    const auto events = t30.prune_level(2, 30.0, 7);
    REQUIRE(events.size() == 1);
    CHECK(events[0].mapped_chunks == 2);
    CHECK(events[0].psnr == doctest::Approx(36.1235994796777).epsilon(1e-9));
    CHECK(t30.base_count() == 1);
    CHECK(t30.effective_chunk(3) == 0x00);
    CHECK(t30.flip_mask(3) == 0x04);
    CHECK(t30.effective_chunk(0) == 0x00);

    // Threshold 40: it is not.
    BaseTree t40(chunks, 8);
    t40.expand(2);
    CHECK(t40.prune_level(2, 40.0, 7).empty());
    CHECK(t40.base_count() == 2);
}

TEST_CASE("infinite threshold never prunes") {
    std::vector<uint32_t> chunks{0b0001, 0b0011, 0b0001, 0b0111};
    BaseTree tree(chunks, 4);
    for (unsigned p : {1u, 2u, 3u, 0u}) {
        tree.expand(p);
        CHECK(tree.prune_level(p, std::numeric_limits<double>::infinity()).empty());
    }
    for (size_t i = 0; i < chunks.size(); ++i)
        CHECK(tree.effective_chunk(i) == chunks[i]);
}

TEST_CASE("tie between equal children prunes the 1 branch into the 0 branch") {
    std::vector<uint32_t> chunks{0b0, 0b1, 0b0, 0b1};
    BaseTree tree(chunks, 1);
    tree.expand(0);
    const auto events = tree.prune_level(0, 0.1, 7);
    REQUIRE(events.size() == 1);
    CHECK(events[0].source_prefix == 1);
    CHECK(events[0].target_prefix == 0);
    CHECK(tree.effective_chunk(1) == 0);
}

TEST_CASE("prune_level requires the most recent level") {
    std::vector<uint32_t> chunks{0b00, 0b01, 0b10, 0b11};
    BaseTree tree(chunks, 2);
    tree.expand(0);
    tree.expand(1);
    CHECK_THROWS_AS(tree.prune_level(0, 30.0, 7), ArgumentError);
    tree.prune_level(1, std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(tree.prune_level(1, 30.0, 7), ArgumentError);
}

TEST_CASE("parent spawning one child yields no candidate") {
    std::vector<uint32_t> chunks{0b1, 0b1, 0b1};
    BaseTree tree(chunks, 1);
    tree.expand(0);
    CHECK(tree.prune_level(0, 0.001, 7).empty());
    CHECK(tree.base_count() == 1);
}

TEST_CASE("enumerate_bases assigns IDs by first occurrence") {
    // chunks {A, B, A, C} with all bits selected.
    std::vector<uint32_t> chunks{0b01, 0b10, 0b01, 0b11};
    BaseTree tree(chunks, 2);
    tree.expand(1);
    tree.expand(0);
    const auto assign = tree.enumerate_bases();
    REQUIRE(assign.dictionary.size() == 3);
    CHECK(assign.ids == std::vector<uint32_t>{0, 1, 0, 2});
    // Base values follow selection order (bit 1 first, so prefix = chunk).
    CHECK(assign.dictionary[0] == 0b01);
    CHECK(assign.dictionary[1] == 0b10);
    CHECK(assign.dictionary[2] == 0b11);
}

TEST_CASE("single repeated pixel maps everything to base 0") {
    std::vector<uint32_t> chunks(9, 0xABCDEF);
    BaseTree tree(chunks, 24);
    for (unsigned p = 0; p < 24; ++p) tree.expand(p);
    const auto assign = tree.enumerate_bases();
    CHECK(assign.dictionary.size() == 1);
    CHECK(std::all_of(assign.ids.begin(), assign.ids.end(),
                      [](uint32_t id) { return id == 0; }));
}

TEST_CASE("pruned leaves lose their ID and map to the target") {
    std::vector<uint32_t> chunks{0b0, 0b0, 0b0, 0b0, 0b0, 0b1, 0b1};
    BaseTree tree(chunks, 1);
    tree.expand(0);
    REQUIRE(tree.prune_level(0, 30.0, 7).size() == 1);
    check_partition(tree);
    const auto assign = tree.enumerate_bases();
    CHECK(assign.dictionary == std::vector<uint32_t>{0});
    CHECK(assign.ids == std::vector<uint32_t>(7, 0));
}

TEST_CASE("pruned chunks travel with the target leaf through later levels") {
    // A tiny threshold prunes at every level; the rare 0b01 chunk first has
    // bit 1 untouched, then bit 0 flipped when it merges into 0b00.
    std::vector<uint32_t> chunks{0b00, 0b00, 0b00, 0b01, 0b10, 0b10, 0b10};
    BaseTree tree(chunks, 2);
    tree.expand(1);
    tree.prune_level(1, 0.1, 7);  // 0b1x (k=3) merges into 0b0x
    tree.expand(0);
    tree.prune_level(0, 0.1, 7);  // the lone 0b01 merges into 0b00
    check_partition(tree);
    CHECK(tree.base_count() == 1);
    CHECK(tree.effective_chunk(4) == 0b00);
    CHECK(tree.flip_mask(4) == 0b10);
    CHECK(tree.effective_chunk(3) == 0b00);
    const auto assign = tree.enumerate_bases();
    CHECK(assign.ids[3] == assign.ids[0]);
}

TEST_CASE("lossless assignment agrees with grouping by split base") {
    std::mt19937 rng(17);
    for (int it = 0; it < 20; ++it) {
        const unsigned lc = 4 + rng() % 5;
        std::vector<uint32_t> chunks(1 + rng() % 64);
        for (auto& c : chunks) c = rng() & ((1u << lc) - 1);

        std::vector<uint8_t> order(lc);
        for (unsigned p = 0; p < lc; ++p) order[p] = static_cast<uint8_t>(p);
        std::shuffle(order.begin(), order.end(), rng);
        const size_t depth = 1 + rng() % lc;
        order.resize(depth);

        BaseTree tree(chunks, lc);
        for (uint8_t p : order) tree.expand(p);
        const auto assign = tree.enumerate_bases();

        const BitSelection sel{order, static_cast<uint8_t>(lc)};
        for (size_t i = 0; i < chunks.size(); ++i) {
            CHECK(assign.dictionary[assign.ids[i]] == split(chunks[i], sel).base);
            for (size_t j = 0; j < i; ++j) {
                const bool same_base =
                    split(chunks[i], sel).base == split(chunks[j], sel).base;
                CHECK(same_base == (assign.ids[i] == assign.ids[j]));
            }
        }
    }
}

TEST_CASE("random expand/prune sequences keep the partition invariants") {
    std::mt19937 rng(37);
    for (int it = 0; it < 30; ++it) {
        const unsigned lc = 2 + rng() % 11;
        std::vector<uint32_t> chunks(1 + rng() % 150);
        for (auto& c : chunks) c = rng() & ((1u << lc) - 1);
        BaseTree tree(chunks, lc);

        std::vector<uint8_t> order(lc);
        for (unsigned p = 0; p < lc; ++p) order[p] = static_cast<uint8_t>(p);
        std::shuffle(order.begin(), order.end(), rng);
        for (uint8_t pos : order) {
            const size_t predicted = tree.count_new_bases(pos);
            const size_t before = tree.base_count();
            tree.expand(pos);
            CHECK(tree.base_count() == before + predicted);
            if (rng() & 1) {
                const double thr = 10.0 + rng() % 60;
                const size_t pre_prune = tree.base_count();
                tree.prune_level(pos, thr, 7);
                CHECK(tree.base_count() <= pre_prune);
            }
            check_partition(tree);
        }
        // Every member's effective base equals its leaf prefix.
        const BitSelection sel{tree.levels(), static_cast<uint8_t>(lc)};
        for (const auto& leaf : tree.leaves())
            for (uint32_t i : leaf.members)
                CHECK(split(tree.effective_chunk(i), sel).base == leaf.prefix);
    }
}

TEST_CASE("BMSE closed form matches k * 4^m / n") {
    std::mt19937 rng(29);
    for (int it = 0; it < 100; ++it) {
        const uint64_t n = 1 + rng() % 10000;
        const uint64_t k = rng() % (n + 1);
        const unsigned m = rng() % 8;
        CHECK(binary_mse(k, m, n) ==
              doctest::Approx(double(k) * std::pow(4.0, m) / double(n))
                  .epsilon(1e-12));
    }
}
