#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rage/image.hpp"

namespace rage {

// compressed size / uncompressed size; lower is better.
double compression_ratio(uint64_t compressed_bytes, uint64_t raw_bytes);

// Mean squared channel difference over all pixels, every 8-bit channel
// (including alpha at 32 bpp) counted as one sample.
double mse(const ImageBuffer& original, const ImageBuffer& reconstructed);

// Global MSE plus per-8x8-block local MSE values (row-major grid of
// ceil(w/8) x ceil(h/8) blocks, edge blocks covering their actual pixels)
// and percentiles of the local distribution.
struct DistortionReport {
    double global_mse = 0.0;
    size_t grid_w = 0;
    size_t grid_h = 0;
    std::vector<double> local_mse;
    double p5 = 0.0, p25 = 0.0, p75 = 0.0, p95 = 0.0;
};

DistortionReport distortion_report(const ImageBuffer& original,
                                   const ImageBuffer& reconstructed);

// One point of a rate-distortion curve.
struct RatePoint {
    double cr = 0.0;
    double mse = 0.0;
};

// MSE ratio of curve_a to curve_b at compression ratio `cr`, both curves
// interpolated piecewise-linearly (curves must be sorted by cr ascending
// and overlap at the query point). A value below 1 means curve_a is less
// distorted. When curve_b hits 0: returns 0 if curve_a is also 0, +inf
// otherwise.
double quality_factor(std::span<const RatePoint> curve_a,
                      std::span<const RatePoint> curve_b, double cr);

}  // namespace rage
