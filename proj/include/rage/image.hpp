#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "rage/error.hpp"

namespace rage {

// Decoded raster image. Each pixel is one fixed-width chunk:
//   24 bpp: bits 23..16 = R, 15..8 = G, 7..0 = B
//   32 bpp: bits 31..24 = A, 23..16 = R, 15..8 = G, 7..0 = B
// Each channel is stored MSB-first, so bit position p carries intra-channel
// significance p % 8 (position 23 is R bit 7 at 24 bpp, position 0 is B bit 0).
// Immutable by convention once built; safe to read concurrently.
struct ImageBuffer {
    uint16_t width = 0;
    uint16_t height = 0;
    uint8_t bpp = 24;  // 24 or 32
    std::vector<uint32_t> pixels;  // raster order, y*width + x

    size_t chunk_count() const { return size_t(width) * height; }

    uint32_t chunk_at(uint32_t x, uint32_t y) const {
        if (x >= width || y >= height)
            throw BoundsError("pixel coordinate out of bounds");
        return pixels[size_t(y) * width + x];
    }

    // Throws ArgumentError unless dimensions, depth, and pixel data agree.
    void validate() const;

    bool operator==(const ImageBuffer&) const = default;
};

// Intra-channel significance of a chunk bit position (exponent of its
// contribution to the channel value).
constexpr unsigned bit_significance(unsigned pos) { return pos % 8; }

// Reads a binary PPM (P6, 24 bpp) or PAM (P7 RGB_ALPHA, 32 bpp) file with
// 8-bit channels. Malformed headers, truncated pixel data, and non-8-bit
// depths raise FormatError with a distinct kind.
ImageBuffer load_image(const std::filesystem::path& path);

// Writes `img` as PPM (24 bpp) or PAM (32 bpp). load_image(store_image(img))
// reproduces img bit for bit.
void store_image(const ImageBuffer& img, const std::filesystem::path& path);

}  // namespace rage
