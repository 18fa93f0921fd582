#pragma once

#include <vector>

#include "srinterp/raster.hpp"

namespace srinterp {

struct FilterSettings {
  double gaussian_sigma = 0.5;
  int gaussian_kernel_radius = 0;  // 0 selects ceil(2 * sigma)
  double unsharp_radius = 1.0;     // sigma of the unsharp blur
  double unsharp_amount = 0.8;
  double unsharp_threshold = 0.0;  // gray levels; smaller detail is left alone

  void validate() const;
  int effective_gaussian_radius() const;
};

/// Normalized 1-D Gaussian taps for offsets -radius..radius.
std::vector<double> gaussian_kernel(double sigma, int radius);

/// Separable convolution with clamp-to-edge borders, kept in floating point.
std::vector<double> gaussian_blur(std::span<const double> plane, int width, int height,
                                  std::span<const double> taps);

Image gaussian_smooth(const Image& img, const FilterSettings& settings);
Image unsharp_mask(const Image& img, const FilterSettings& settings);
Image smooth_then_sharpen(const Image& img, const FilterSettings& settings);

}  // namespace srinterp
