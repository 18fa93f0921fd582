#pragma once

// Serial, straight-from-the-definition versions of the parallel kernels.
// They exist for equivalence tests and for the benchmark baseline; nothing
// in the main library depends on them.

#include <cstdint>
#include <vector>

#include "srinterp/filters.hpp"
#include "srinterp/raster.hpp"
#include "srinterp/rng.hpp"
#include "srinterp/scanconv.hpp"

namespace srinterp::reference {

/// ceil(i / ratio) in integer arithmetic.
std::vector<int> ceil_map(int src_len, int ratio);

/// Quantized-r stochastic map in exact integer arithmetic over tenths.
std::vector<int> sr_eq3_map(int src_len, int ratio, const std::vector<int>& r_tenths);

Image nni_upscale(const Image& src, int ratio, const std::vector<int>& row_map, const std::vector<int>& col_map);
Image bilinear_upscale(const Image& src, int ratio);
Image bicubic_upscale(const Image& src, int ratio);

/// Direct 2-D convolution with a (2r+1)^2 Gaussian, clamp-to-edge.
Image gaussian_smooth(const Image& img, double sigma, int radius);

double mse(const Image& a, const Image& b);

/// Brute-force SSIM: every 11x11 window evaluated with explicit 2-D weights.
double ssim(const Image& a, const Image& b);

/// Per-pixel scan conversion recomputing the geometry for every pixel.
Image scan_convert(const Image& frame, const SectorGeometry& geom, Method method);

}  // namespace srinterp::reference
