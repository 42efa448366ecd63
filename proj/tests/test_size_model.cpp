#include "doctest.h"
#include "rage/size_model.hpp"

using namespace rage;

TEST_CASE("rle_value_size boundaries") {
    CHECK(rle_value_size(0) == 4);
    CHECK(rle_value_size(7) == 4);
    CHECK(rle_value_size(8) == 8);
    CHECK(rle_value_size(135) == 8);
    CHECK_THROWS_AS(rle_value_size(136), ArgumentError);
}

TEST_CASE("s_rle sums packet sizes, rejects odd lengths") {
    const std::vector<uint16_t> values{2, 2, 1, 0};
    CHECK(s_rle(values) == 16);
    const std::vector<uint16_t> odd{2, 2, 1};
    CHECK_THROWS_AS(s_rle(std::span<const uint16_t>(odd)), ArgumentError);
    CHECK(s_rle(std::span<const RleSequence>{}) == 0);
}

TEST_CASE("n_pairs implements the indicator sum") {
    CHECK(n_pairs(std::vector<uint16_t>{2, 2, 1, 0}) == 4);
    CHECK(n_pairs(std::vector<uint16_t>{0, 2, 1, 0}) == 3);
    CHECK(n_pairs(std::vector<uint16_t>{1, 0}) == 1);
}

TEST_CASE("s_pairs multiplies records by record width") {
    CHECK(s_pairs(4, 3, 2) == 20);
    CHECK(s_pairs(10, 0, 0) == 0);
    CHECK(s_pairs(0, 5, 7) == 0);
}

TEST_CASE("offset widths floor at one bit") {
    CHECK(s_offset(2, 20, 16) == 2 * (5 + 4));
    CHECK(s_offset(1, 0, 4) == 1 * (1 + 2));
    CHECK(s_offset(3, 1, 1) == 6);
    CHECK(offset_width(0) == 1);
    CHECK(offset_width(1) == 1);
    CHECK(offset_width(2) == 1);
    CHECK(offset_width(3) == 2);
    CHECK(offset_width(256) == 8);
    CHECK(offset_width(257) == 9);
}

TEST_CASE("total_size adds the four terms") {
    std::vector<RleSequence> rows(2);
    rows[0].values = {2, 2, 1, 0};
    rows[0].symbols = {1, 2, 3, 4};
    rows[1].values = {0, 2, 1, 0};
    rows[1].symbols = {5, 6, 7};
    const SizeBreakdown b = total_size(/*base_count=*/3, /*base_bits=*/5,
                                       /*id_bits=*/2, /*deviation_bits=*/3,
                                       /*height=*/2, rows);
    CHECK(b.dict_bits == 15);
    CHECK(b.rle_bits == 32);
    CHECK(b.pair_bits == 7 * 5);
    CHECK(b.offset_bits == 2 * (offset_width(35) + offset_width(32)));
    CHECK(b.total_bits() == b.dict_bits + b.rle_bits + b.pair_bits + b.offset_bits);
}
