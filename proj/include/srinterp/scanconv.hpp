#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srinterp/interp.hpp"
#include "srinterp/raster.hpp"
#include "srinterp/rng.hpp"

namespace srinterp {

/// Phased-array acquisition plus output raster description. The apex sits at
/// the top-center of the output; depth grows downward and end_depth_mm lands
/// on the bottom edge.
struct SectorGeometry {
  double start_depth_mm = 0.0;
  double end_depth_mm = 150.0;
  double sector_span_deg = 75.0;
  int beam_count = 128;
  int samples_per_beam = 512;
  int out_width = 512;
  int out_height = 512;
  std::uint8_t background = 0;

  void validate() const;
  double mm_per_pixel() const { return end_depth_mm / out_height; }
};

SectorGeometry parse_geometry_json(const std::string& text);
std::string geometry_to_json(const SectorGeometry& geom);

/// Per-output-pixel polar coordinates, row-major.
struct PolarLookup {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> inside;
  std::vector<double> beam_subscript;    // 1-based, in [1, beam_count] when inside
  std::vector<double> sample_subscript;  // 1-based, in [1, samples_per_beam] when inside

  std::size_t inside_count() const;
};

PolarLookup build_lookup(const SectorGeometry& geom);

/// Closed-form area of the annular sector over the raster area, valid when
/// the sector fits inside the raster.
double analytic_inside_fraction(const SectorGeometry& geom);

/// Converts one polar frame (width = beams, height = samples per beam).
/// NNI-SR methods draw twice per inside pixel in row-major order: first for
/// the sample subscript, then for the beam subscript.
Image scan_convert(const Image& frame, const SectorGeometry& geom, const PolarLookup& lookup, Method method,
                   DrawStream* stream);
Image scan_convert(const Image& frame, const SectorGeometry& geom, Method method, DrawStream* stream);

/// Per-frame conversion. Stochastic methods seed frame k with
/// derive_seed(seed, k), so any frame can be reproduced on its own.
FrameSequence convert_sequence(const FrameSequence& frames, const SectorGeometry& geom, Method method,
                               std::uint32_t seed);

/// Synthetic polar phantom: speckle-like texture, a few bright wire targets
/// and a slowly drifting bright band, one plane per frame.
FrameSequence make_phantom(const SectorGeometry& geom, std::size_t frame_count, double frame_rate_fps,
                           std::uint32_t seed);

}  // namespace srinterp
