#include "rage/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rage {

namespace {

void check_shapes(const ImageBuffer& a, const ImageBuffer& b) {
    if (a.width != b.width || a.height != b.height || a.bpp != b.bpp)
        throw ArgumentError("image shapes differ");
    a.validate();
    b.validate();
}

// Sum of squared 8-bit channel differences between two chunks.
uint64_t sq_diff(uint32_t p, uint32_t q, unsigned channels) {
    uint64_t sum = 0;
    for (unsigned c = 0; c < channels; ++c) {
        const int d = int((p >> (8 * c)) & 0xFF) - int((q >> (8 * c)) & 0xFF);
        sum += uint64_t(int64_t(d) * d);
    }
    return sum;
}

double percentile(const std::vector<double>& sorted, double q) {
    if (sorted.size() == 1) return sorted[0];
    const double rank = q / 100.0 * double(sorted.size() - 1);
    const size_t lo = static_cast<size_t>(rank);
    const size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (rank - double(lo)) * (sorted[hi] - sorted[lo]);
}

double interpolate(std::span<const RatePoint> curve, double cr) {
    if (curve.empty()) throw ArgumentError("empty rate curve");
    for (size_t i = 1; i < curve.size(); ++i)
        if (curve[i].cr < curve[i - 1].cr)
            throw ArgumentError("rate curve not sorted by CR");
    if (cr < curve.front().cr || cr > curve.back().cr)
        throw BoundsError("CR outside curve range");
    for (size_t i = 1; i < curve.size(); ++i) {
        if (cr <= curve[i].cr) {
            const double span = curve[i].cr - curve[i - 1].cr;
            if (span == 0) return curve[i - 1].mse;
            const double t = (cr - curve[i - 1].cr) / span;
            return curve[i - 1].mse + t * (curve[i].mse - curve[i - 1].mse);
        }
    }
    return curve.back().mse;
}

}  // namespace

double compression_ratio(uint64_t compressed_bytes, uint64_t raw_bytes) {
    if (raw_bytes == 0) throw ArgumentError("raw size must be positive");
    return double(compressed_bytes) / double(raw_bytes);
}

double mse(const ImageBuffer& original, const ImageBuffer& reconstructed) {
    check_shapes(original, reconstructed);
    const unsigned channels = original.bpp / 8;
    uint64_t sum = 0;
    for (size_t i = 0; i < original.pixels.size(); ++i)
        sum += sq_diff(original.pixels[i], reconstructed.pixels[i], channels);
    return double(sum) / (double(original.chunk_count()) * channels);
}

DistortionReport distortion_report(const ImageBuffer& original,
                                   const ImageBuffer& reconstructed) {
    check_shapes(original, reconstructed);
    const unsigned channels = original.bpp / 8;
    const size_t w = original.width, h = original.height;

    DistortionReport rep;
    rep.grid_w = (w + 7) / 8;
    rep.grid_h = (h + 7) / 8;
    rep.local_mse.resize(rep.grid_w * rep.grid_h);

    uint64_t total = 0;
    for (size_t by = 0; by < rep.grid_h; ++by) {
        for (size_t bx = 0; bx < rep.grid_w; ++bx) {
            const size_t x1 = std::min(bx * 8 + 8, w);
            const size_t y1 = std::min(by * 8 + 8, h);
            uint64_t block = 0;
            for (size_t y = by * 8; y < y1; ++y)
                for (size_t x = bx * 8; x < x1; ++x)
                    block += sq_diff(original.pixels[y * w + x],
                                     reconstructed.pixels[y * w + x], channels);
            total += block;
            const size_t samples = (x1 - bx * 8) * (y1 - by * 8) * channels;
            rep.local_mse[by * rep.grid_w + bx] = double(block) / double(samples);
        }
    }
    rep.global_mse = double(total) / (double(w) * double(h) * channels);

    std::vector<double> sorted = rep.local_mse;
    std::sort(sorted.begin(), sorted.end());
    rep.p5 = percentile(sorted, 5);
    rep.p25 = percentile(sorted, 25);
    rep.p75 = percentile(sorted, 75);
    rep.p95 = percentile(sorted, 95);
    return rep;
}

double quality_factor(std::span<const RatePoint> curve_a,
                      std::span<const RatePoint> curve_b, double cr) {
    const double a = interpolate(curve_a, cr);
    const double b = interpolate(curve_b, cr);
    if (b == 0.0)
        return a == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return a / b;
}

}  // namespace rage
