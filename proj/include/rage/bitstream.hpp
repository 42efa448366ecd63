#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rage/error.hpp"

namespace rage {

// MSB-first bit packing into a growable byte buffer. The first bit written
// lands in the most significant bit of byte 0.
class BitWriter {
public:
    void put(uint64_t value, unsigned bits) {
        for (unsigned i = bits; i-- > 0;) {
            const size_t byte = size_ >> 3;
            const unsigned off = size_ & 7;
            if (off == 0) bytes_.push_back(0);
            if ((value >> i) & 1u) bytes_[byte] |= static_cast<uint8_t>(0x80u >> off);
            ++size_;
        }
    }

    // Pads with zero bits up to the next byte boundary.
    void align_to_byte() {
        size_ = (size_ + 7) & ~size_t{7};
        bytes_.resize((size_ + 7) / 8);
    }

    size_t bit_size() const { return size_; }
    const std::vector<uint8_t>& bytes() const { return bytes_; }
    std::vector<uint8_t> take() {
        size_ = 0;
        return std::move(bytes_);
    }

private:
    std::vector<uint8_t> bytes_;
    size_t size_ = 0;
};

// Bounds-checked MSB-first reader over a byte span. Reads past `bit_end`
// throw CorruptError(stream_overrun); corrupt input can never read out of
// the underlying buffer.
class BitReader {
public:
    BitReader(std::span<const uint8_t> data, size_t bit_begin, size_t bit_end)
        : data_(data.data()), pos_(bit_begin), begin_(bit_begin), end_(bit_end) {
        if (bit_end < bit_begin || bit_end > data.size() * 8)
            throw CorruptError(CorruptError::Kind::length_mismatch,
                               "bit range exceeds buffer");
    }

    explicit BitReader(std::span<const uint8_t> data)
        : BitReader(data, 0, data.size() * 8) {}

    uint64_t get(unsigned bits) {
        if (bits > end_ - pos_)
            throw CorruptError(CorruptError::Kind::stream_overrun,
                               "bit stream exhausted mid-read");
        uint64_t v = 0;
        for (unsigned i = 0; i < bits; ++i) {
            v = (v << 1) | ((data_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u);
            ++pos_;
        }
        return v;
    }

    void seek(size_t bit_pos) {
        if (bit_pos < begin_ || bit_pos > end_)
            throw CorruptError(CorruptError::Kind::stream_overrun,
                               "seek outside bit range");
        pos_ = bit_pos;
    }

    size_t position() const { return pos_; }
    size_t remaining() const { return end_ - pos_; }

private:
    const uint8_t* data_;
    size_t pos_;
    size_t begin_;
    size_t end_;
};

}  // namespace rage
