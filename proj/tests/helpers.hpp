#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "rage/image.hpp"

namespace testutil {

inline std::filesystem::path corpus_dir() {
#ifdef RAGE_CORPUS_DIR
    return RAGE_CORPUS_DIR;
#else
    return "corpus";
#endif
}

inline std::vector<std::filesystem::path> corpus_files() {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(corpus_dir())) {
        const auto ext = entry.path().extension();
        if (ext == ".ppm" || ext == ".pam") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

// Random image with a bounded alphabet of distinct pixel values. Mixes iid
// pixels with run-structured stretches so RLE paths get exercised.
inline rage::ImageBuffer random_image(std::mt19937& rng, uint16_t w, uint16_t h,
                                      uint8_t bpp, size_t alphabet) {
    const uint32_t mask = bpp == 32 ? 0xFFFFFFFFu : 0x00FFFFFFu;
    std::vector<uint32_t> palette(alphabet);
    for (auto& p : palette) p = rng() & mask;

    rage::ImageBuffer img;
    img.width = w;
    img.height = h;
    img.bpp = bpp;
    img.pixels.resize(size_t(w) * h);
    std::uniform_int_distribution<size_t> pick(0, alphabet - 1);
    const bool runs = rng() & 1;
    size_t i = 0;
    while (i < img.pixels.size()) {
        const uint32_t value = palette[pick(rng)];
        size_t len = 1;
        if (runs) len = 1 + rng() % 9;
        for (size_t j = 0; j < len && i < img.pixels.size(); ++j)
            img.pixels[i++] = value;
    }
    return img;
}

}  // namespace testutil
