#pragma once

#include "rial/image.hpp"

namespace rial {

// Local adaptive threshold parameters. The threshold at a pixel is
// T = local_mean * (1 - bias) over a window x window square; a pixel becomes
// foreground iff its intensity >= T (ties go to foreground).
struct ThresholdConfig {
    int window = 31;     // odd, >= 3, <= min(width, height)
    double bias = 0.10;  // sensitivity constant
};

// Adaptive Wiener smoothing: per pixel,
//   out = m + (max(0, v - nv) / max(v, nv)) * (x - m)
// with m, v the local mean/variance over the window and nv the mean of all
// local variances. Edges are preserved (v >> nv keeps the factor near 1)
// while flat noisy areas collapse to the local mean. A noise-free image
// (nv = 0) is returned unchanged.
GrayImage wiener_denoise(const GrayImage& img, int window);

// Integral-image local mean threshold; borders are edge-replicated, so the
// window never shrinks and runtime is independent of its size.
BinaryImage adaptive_threshold(const GrayImage& img, const ThresholdConfig& cfg);

/// Majority vote of each 3x3 neighbourhood (edge-replicated).
BinaryImage median3x3(const BinaryImage& img);

}  // namespace rial
