#include "srinterp/filters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srinterp/error.hpp"
#include "srinterp/interp.hpp"

namespace srinterp {

namespace {

std::vector<double> to_plane(const Image& img) {
  return std::vector<double>(img.samples().begin(), img.samples().end());
}

}  // namespace

void FilterSettings::validate() const {
  if (!(gaussian_sigma > 0.0) || !(unsharp_radius > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "filter sigmas must be positive");
  }
  if (gaussian_kernel_radius < 0) throw Error(ErrorCode::InvalidArgument, "kernel radius must be >= 0");
  if (!(unsharp_amount >= 0.0)) throw Error(ErrorCode::InvalidArgument, "unsharp amount must be >= 0");
  if (!(unsharp_threshold >= 0.0 && unsharp_threshold <= 255.0)) {
    throw Error(ErrorCode::InvalidArgument, "unsharp threshold must lie in [0, 255]");
  }
}

int FilterSettings::effective_gaussian_radius() const {
  return gaussian_kernel_radius > 0 ? gaussian_kernel_radius
                                    : static_cast<int>(std::ceil(2.0 * gaussian_sigma));
}

std::vector<double> gaussian_kernel(double sigma, int radius) {
  if (!(sigma > 0.0) || radius < 0) throw Error(ErrorCode::InvalidArgument, "bad gaussian kernel parameters");
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    taps[k + radius] = std::exp(-(k * k) / (2.0 * sigma * sigma));
    sum += taps[k + radius];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

std::vector<double> gaussian_blur(std::span<const double> plane, int width, int height,
                                  std::span<const double> taps) {
  const int radius = static_cast<int>(taps.size() / 2);
  std::vector<double> horizontal(plane.size());
  std::vector<double> out(plane.size());
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    const double* src = plane.data() + static_cast<std::size_t>(y) * width;
    double* dst = horizontal.data() + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) acc += taps[k + radius] * src[std::clamp(x + k, 0, width - 1)];
      dst[x] = acc;
    }
  }
#pragma omp parallel for schedule(static)
  for (int y = 0; y < height; ++y) {
    double* dst = out.data() + static_cast<std::size_t>(y) * width;
    for (int x = 0; x < width; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += taps[k + radius] * horizontal[static_cast<std::size_t>(std::clamp(y + k, 0, height - 1)) * width + x];
      }
      dst[x] = acc;
    }
  }
  return out;
}

Image gaussian_smooth(const Image& img, const FilterSettings& settings) {
  settings.validate();
  const auto taps = gaussian_kernel(settings.gaussian_sigma, settings.effective_gaussian_radius());
  const auto blurred = gaussian_blur(to_plane(img), img.width(), img.height(), taps);
  std::vector<std::uint8_t> out(blurred.size());
  std::transform(blurred.begin(), blurred.end(), out.begin(), quantize_gray);
  return Image(img.width(), img.height(), std::move(out));
}

Image unsharp_mask(const Image& img, const FilterSettings& settings) {
  settings.validate();
  const auto plane = to_plane(img);
  const auto taps = gaussian_kernel(settings.unsharp_radius,
                                    static_cast<int>(std::ceil(2.0 * settings.unsharp_radius)));
  const auto blurred = gaussian_blur(plane, img.width(), img.height(), taps);
  std::vector<std::uint8_t> out(plane.size());
  for (std::size_t i = 0; i < plane.size(); ++i) {
    double detail = plane[i] - blurred[i];
    if (std::abs(detail) < settings.unsharp_threshold) detail = 0.0;
    out[i] = quantize_gray(plane[i] + settings.unsharp_amount * detail);
  }
  return Image(img.width(), img.height(), std::move(out));
}

Image smooth_then_sharpen(const Image& img, const FilterSettings& settings) {
  return unsharp_mask(gaussian_smooth(img, settings), settings);
}

}  // namespace srinterp
