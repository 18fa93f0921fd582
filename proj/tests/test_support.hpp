#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "srinterp/raster.hpp"
#include "srinterp/rng.hpp"

namespace testing_support {

inline std::filesystem::path data_dir() { return SRINTERP_TEST_DATA_DIR; }

inline std::vector<std::string> natural_image_ids() {
  std::vector<std::string> ids;
  for (const auto& e : std::filesystem::directory_iterator(data_dir() / "natural" / "input")) {
    if (e.path().extension() == ".pgm") ids.push_back(e.path().stem().string());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

inline srinterp::Image natural_input(const std::string& id) {
  return srinterp::load_pgm(data_dir() / "natural" / "input" / (id + ".pgm"));
}

inline srinterp::Image natural_reference(const std::string& id) {
  return srinterp::load_pgm(data_dir() / "natural" / "ref" / (id + ".pgm"));
}

inline srinterp::Image random_image(int w, int h, std::uint32_t seed) {
  srinterp::Mt19937 mt(seed);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * h);
  for (auto& p : px) p = static_cast<std::uint8_t>(mt.next_u32() >> 24);
  return srinterp::Image(w, h, std::move(px));
}

/// Smooth random field: sum of a few oriented sinusoids plus mild noise.
inline srinterp::Image smooth_image(int w, int h, std::uint32_t seed) {
  srinterp::Mt19937 mt(seed);
  auto unit = [&] { return srinterp::unit_from_u32(mt.next_u32()); };
  double fx[3], fy[3], ph[3];
  for (int k = 0; k < 3; ++k) {
    fx[k] = 0.02 + 0.1 * unit();
    fy[k] = 0.02 + 0.1 * unit();
    ph[k] = 6.283 * unit();
  }
  std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double v = 128;
      for (int k = 0; k < 3; ++k) v += 35 * std::sin(fx[k] * x + fy[k] * y + ph[k]);
      v += 10 * (unit() - 0.5);
      px[static_cast<std::size_t>(y) * w + x] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
    }
  }
  return srinterp::Image(w, h, std::move(px));
}

/// Adds zero-mean Gaussian noise (Box-Muller over MT19937), rounded and clamped.
inline srinterp::Image add_gaussian_noise(const srinterp::Image& img, double sigma, std::uint32_t seed) {
  srinterp::Mt19937 mt(seed);
  std::vector<std::uint8_t> px(img.samples().begin(), img.samples().end());
  for (auto& p : px) {
    const double u1 = (mt.next_u32() + 1.0) / 4294967297.0;
    const double u2 = srinterp::unit_from_u32(mt.next_u32());
    const double n = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    p = static_cast<std::uint8_t>(std::clamp(std::floor(p + sigma * n + 0.5), 0.0, 255.0));
  }
  return srinterp::Image(img.width(), img.height(), std::move(px));
}

}  // namespace testing_support
