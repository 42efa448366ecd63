// Regenerates the bundled test corpus: small synthetic discrete-tone images
// (flat fills, glyph strokes, logo shapes, sprites, UI widgets) in both
// 24 and 32 bpp, plus a few continuous-tone gradients and noise images.
// Fully deterministic; the committed corpus/ files are canonical.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "rage/image.hpp"

using rage::ImageBuffer;

namespace {

struct Lcg {
    uint32_t state;
    explicit Lcg(uint32_t seed) : state(seed) {}
    uint32_t next() { return state = state * 1664525u + 1013904223u; }
    uint32_t below(uint32_t n) { return next() % n; }
};

uint32_t rgb(unsigned r, unsigned g, unsigned b) {
    return (uint32_t(r & 0xFF) << 16) | (uint32_t(g & 0xFF) << 8) | (b & 0xFF);
}

uint32_t argb(unsigned a, unsigned r, unsigned g, unsigned b) {
    return (uint32_t(a & 0xFF) << 24) | rgb(r, g, b);
}

ImageBuffer blank(uint16_t w, uint16_t h, uint8_t bpp, uint32_t fill) {
    ImageBuffer img;
    img.width = w;
    img.height = h;
    img.bpp = bpp;
    img.pixels.assign(size_t(w) * h, fill);
    return img;
}

// Triangle wave in [0, 255]; integer math keeps regeneration bit-stable.
unsigned tri(unsigned t) {
    const unsigned m = t % 510;
    return m < 255 ? m : 510 - m;
}

ImageBuffer flat() { return blank(16, 16, 24, rgb(40, 90, 160)); }

ImageBuffer checker() {
    ImageBuffer img = blank(8, 8, 24, 0);
    for (unsigned y = 0; y < 8; ++y)
        for (unsigned x = 0; x < 8; ++x)
            img.pixels[y * 8 + x] =
                ((x + y) & 1) ? rgb(230, 30, 30) : rgb(30, 30, 230);
    return img;
}

ImageBuffer stripes() {
    const uint32_t palette[3] = {rgb(252, 186, 3), rgb(33, 33, 33),
                                 rgb(240, 240, 240)};
    ImageBuffer img = blank(13, 9, 24, 0);
    for (unsigned y = 0; y < 9; ++y)
        for (unsigned x = 0; x < 13; ++x)
            img.pixels[y * 13 + x] = palette[(x / 2) % 3];
    return img;
}

ImageBuffer glyph() {
    // Blocky 'A' on a flat background.
    static const char* rows[12] = {
        "....####....", "...######...", "..###..###..", "..##....##..",
        ".##......##.", ".##......##.", ".##########.", ".##########.",
        "##........##", "##........##", "##........##", "##........##"};
    ImageBuffer img = blank(12, 12, 24, rgb(255, 255, 255));
    for (unsigned y = 0; y < 12; ++y)
        for (unsigned x = 0; x < 12; ++x)
            if (rows[y][x] == '#') img.pixels[y * 12 + x] = rgb(20, 20, 20);
    return img;
}

ImageBuffer glyph_strip() {
    // A row of font-like strokes: vertical stems, bowls, and crossbars laid
    // out from a tiny deterministic generator.
    ImageBuffer img = blank(64, 24, 24, rgb(250, 250, 245));
    const uint32_t ink = rgb(15, 15, 25);
    Lcg rng(0xF00D);
    for (unsigned cell = 0; cell < 8; ++cell) {
        const unsigned x0 = cell * 8 + 1;
        const unsigned style = rng.below(4);
        for (unsigned y = 4; y < 20; ++y) {
            img.pixels[y * 64 + x0] = ink;
            if (style == 0 && (y == 4 || y == 11 || y == 19))
                for (unsigned x = x0; x < x0 + 5; ++x) img.pixels[y * 64 + x] = ink;
            if (style == 1) img.pixels[y * 64 + x0 + 4] = ink;
            if (style == 1 && (y == 4 || y == 19))
                for (unsigned x = x0; x < x0 + 5; ++x) img.pixels[y * 64 + x] = ink;
            if (style == 2 && y >= 8 && y <= 15) img.pixels[y * 64 + x0 + 3] = ink;
            if (style == 3 && (y % 3 == 0)) img.pixels[y * 64 + x0 + 2] = ink;
        }
    }
    return img;
}

ImageBuffer logo() {
    // Disc, ring, and bar in four flat colors.
    ImageBuffer img = blank(48, 32, 24, rgb(245, 245, 245));
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 48; ++x) {
            const int dx = x - 16, dy = y - 16;
            const int d2 = dx * dx + dy * dy;
            if (d2 < 49)
                img.pixels[y * 48 + x] = rgb(200, 40, 40);
            else if (d2 < 100)
                img.pixels[y * 48 + x] = rgb(40, 40, 120);
            if (x >= 30 && x < 44 && y >= 12 && y < 20)
                img.pixels[y * 48 + x] = rgb(30, 160, 80);
        }
    return img;
}

ImageBuffer palette_tiles() {
    ImageBuffer img = blank(32, 32, 24, 0);
    for (unsigned y = 0; y < 32; ++y)
        for (unsigned x = 0; x < 32; ++x) {
            const unsigned tile = (y / 8) * 4 + x / 8;
            img.pixels[y * 32 + x] =
                rgb(tile * 16, 255 - tile * 16, (tile * 37) % 256);
        }
    return img;
}

ImageBuffer sprite() {
    // Mirrored random blob, the classic sprite look.
    ImageBuffer img = blank(24, 24, 24, rgb(0, 0, 0));
    Lcg rng(0xBEEF);
    const uint32_t body = rgb(90, 220, 90), eye = rgb(255, 255, 255);
    for (unsigned y = 2; y < 22; ++y)
        for (unsigned x = 2; x < 12; ++x) {
            if (rng.below(3) == 0) continue;
            const uint32_t c = rng.below(8) == 0 ? eye : body;
            img.pixels[y * 24 + x] = c;
            img.pixels[y * 24 + (23 - x)] = c;
        }
    return img;
}

ImageBuffer icon_alpha() {
    // Disc with a hard edge ring at half alpha, transparent outside.
    ImageBuffer img = blank(16, 16, 32, argb(0, 0, 0, 0));
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) {
            const int dx = 2 * x - 15, dy = 2 * y - 15;
            const int d2 = dx * dx + dy * dy;
            if (d2 <= 121)
                img.pixels[y * 16 + x] = argb(255, 240, 170, 30);
            else if (d2 <= 196)
                img.pixels[y * 16 + x] = argb(128, 60, 45, 20);
        }
    return img;
}

ImageBuffer cursor() {
    static const char* rows[12] = {
        "#...........", "##..........", "#*#.........", "#**#........",
        "#***#.......", "#****#......", "#*****#.....", "#******#....",
        "#***####....", "#*#*#.......", "##.#*#......", "#...##......"};
    ImageBuffer img = blank(12, 12, 32, argb(0, 0, 0, 0));
    for (unsigned y = 0; y < 12; ++y)
        for (unsigned x = 0; x < 12; ++x) {
            if (rows[y][x] == '#') img.pixels[y * 12 + x] = argb(255, 0, 0, 0);
            if (rows[y][x] == '*') img.pixels[y * 12 + x] = argb(255, 255, 255, 255);
        }
    return img;
}

ImageBuffer button() {
    // Rounded two-tone button with transparent corners.
    ImageBuffer img = blank(40, 16, 32, argb(0, 0, 0, 0));
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 40; ++x) {
            const int cx = x < 8 ? 8 - x : (x >= 32 ? x - 31 : 0);
            const int cy = y < 8 ? 8 - y : y - 7;
            if (cx * cx + cy * cy > 64) continue;
            img.pixels[y * 40 + x] =
                y < 8 ? argb(255, 70, 130, 220) : argb(255, 50, 100, 180);
        }
    return img;
}

ImageBuffer gradient() {
    ImageBuffer img = blank(32, 32, 24, 0);
    for (unsigned y = 0; y < 32; ++y)
        for (unsigned x = 0; x < 32; ++x)
            img.pixels[y * 32 + x] = rgb(x * 8, y * 8, (x + y) * 4);
    return img;
}

ImageBuffer noise() {
    ImageBuffer img = blank(24, 24, 24, 0);
    Lcg rng(0x9015E);
    for (auto& p : img.pixels) p = rng.next() & 0xFFFFFF;
    return img;
}

ImageBuffer plasma() {
    // Smooth interfering triangle waves, continuous-tone but structured.
    ImageBuffer img = blank(48, 48, 24, 0);
    for (unsigned y = 0; y < 48; ++y)
        for (unsigned x = 0; x < 48; ++x)
            img.pixels[y * 48 + x] =
                rgb(tri(x * 9 + y * 3), tri(x * 2 + y * 11 + 60),
                    tri((x + y) * 7 + 128));
    return img;
}

ImageBuffer alpha_fade() {
    // Continuous-tone 32 bpp: alpha ramps across, color ramps down.
    ImageBuffer img = blank(28, 20, 32, 0);
    for (unsigned y = 0; y < 20; ++y)
        for (unsigned x = 0; x < 28; ++x)
            img.pixels[y * 28 + x] =
                argb(x * 9, 200 - y * 7, tri(x * 13), 90 + y * 8);
    return img;
}

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "corpus";
    std::filesystem::create_directories(dir);

    const std::pair<const char*, ImageBuffer> images[] = {
        {"flat_16x16.ppm", flat()},
        {"checker_8x8.ppm", checker()},
        {"stripes_13x9.ppm", stripes()},
        {"glyph_a_12x12.ppm", glyph()},
        {"glyphs_64x24.ppm", glyph_strip()},
        {"logo_48x32.ppm", logo()},
        {"palette_32x32.ppm", palette_tiles()},
        {"sprite_24x24.ppm", sprite()},
        {"icon_16x16.pam", icon_alpha()},
        {"cursor_12x12.pam", cursor()},
        {"button_40x16.pam", button()},
        {"gradient_32x32.ppm", gradient()},
        {"noise_24x24.ppm", noise()},
        {"plasma_48x48.ppm", plasma()},
        {"alpha_fade_28x20.pam", alpha_fade()},
    };
    for (const auto& [name, img] : images) {
        rage::store_image(img, dir / name);
        std::printf("wrote %s\n", (dir / name).string().c_str());
    }
    return 0;
}
