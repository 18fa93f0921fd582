#include "srinterp/scanconv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include <json.hpp>

#include "srinterp/error.hpp"

namespace srinterp {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::uint8_t nearest_node(const Image& frame, double beam_sub, double sample_sub, RoundingStrategy strategy,
                          DrawStream* stream) {
  // Draw order: sample subscript first, then beam subscript.
  const long s = round_subscript(Subscript(sample_sub), strategy, stream).index;
  const long b = round_subscript(Subscript(beam_sub), strategy, stream).index;
  const int si = static_cast<int>(std::clamp<long>(s, 1, frame.height())) - 1;
  const int bi = static_cast<int>(std::clamp<long>(b, 1, frame.width())) - 1;
  return frame.at(bi, si);
}

}  // namespace

void SectorGeometry::validate() const {
  const bool ok = start_depth_mm >= 0.0 && start_depth_mm < end_depth_mm && sector_span_deg > 0.0 &&
                  sector_span_deg < 180.0 && beam_count >= 2 && samples_per_beam >= 2 && out_width >= 1 &&
                  out_height >= 1;
  if (!ok) throw Error(ErrorCode::InvalidGeometry, "sector geometry violates its invariants");
}

SectorGeometry parse_geometry_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidGeometry, std::string("geometry is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidGeometry, "geometry must be a JSON object");
  static const char* kFields[] = {"start_depth_mm", "end_depth_mm", "sector_span_deg", "beam_count",
                                  "samples_per_beam", "out_width", "out_height", "background"};
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(std::begin(kFields), std::end(kFields), [&](const char* f) { return key == f; }) ==
        std::end(kFields)) {
      throw Error(ErrorCode::InvalidGeometry, "unknown geometry field '" + key + "'");
    }
  }
  SectorGeometry g;
  try {
    g.start_depth_mm = j.at("start_depth_mm").get<double>();
    g.end_depth_mm = j.at("end_depth_mm").get<double>();
    g.sector_span_deg = j.at("sector_span_deg").get<double>();
    g.beam_count = j.at("beam_count").get<int>();
    g.samples_per_beam = j.at("samples_per_beam").get<int>();
    g.out_width = j.at("out_width").get<int>();
    g.out_height = j.at("out_height").get<int>();
    const int bg = j.value("background", 0);
    if (bg < 0 || bg > 255) throw Error(ErrorCode::InvalidGeometry, "background must be a gray level");
    g.background = static_cast<std::uint8_t>(bg);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidGeometry, e.what());
  }
  g.validate();
  return g;
}

std::string geometry_to_json(const SectorGeometry& g) {
  nlohmann::ordered_json j;
  j["start_depth_mm"] = g.start_depth_mm;
  j["end_depth_mm"] = g.end_depth_mm;
  j["sector_span_deg"] = g.sector_span_deg;
  j["beam_count"] = g.beam_count;
  j["samples_per_beam"] = g.samples_per_beam;
  j["out_width"] = g.out_width;
  j["out_height"] = g.out_height;
  j["background"] = g.background;
  return j.dump(2);
}

std::size_t PolarLookup::inside_count() const {
  return static_cast<std::size_t>(std::count(inside.begin(), inside.end(), std::uint8_t{1}));
}

PolarLookup build_lookup(const SectorGeometry& geom) {
  geom.validate();
  PolarLookup lut;
  lut.width = geom.out_width;
  lut.height = geom.out_height;
  const std::size_t n = static_cast<std::size_t>(geom.out_width) * geom.out_height;
  lut.inside.assign(n, 0);
  lut.beam_subscript.assign(n, 0.0);
  lut.sample_subscript.assign(n, 0.0);

  const double scale = geom.mm_per_pixel();
  const double half_span = geom.sector_span_deg * kDegToRad / 2.0;
  const double depth_range = geom.end_depth_mm - geom.start_depth_mm;
#pragma omp parallel for schedule(static)
  for (int r = 0; r < geom.out_height; ++r) {
    const double z = (r + 0.5) * scale;
    for (int c = 0; c < geom.out_width; ++c) {
      const double x = (c + 0.5 - geom.out_width / 2.0) * scale;
      const double rho = std::hypot(x, z);
      const double theta = std::atan2(x, z);
      if (rho < geom.start_depth_mm || rho > geom.end_depth_mm || std::abs(theta) > half_span) continue;
      const std::size_t i = static_cast<std::size_t>(r) * geom.out_width + c;
      lut.inside[i] = 1;
      const double beam = 1.0 + (theta + half_span) / (2.0 * half_span) * (geom.beam_count - 1);
      const double sample = 1.0 + (rho - geom.start_depth_mm) / depth_range * (geom.samples_per_beam - 1);
      lut.beam_subscript[i] = std::clamp(beam, 1.0, static_cast<double>(geom.beam_count));
      lut.sample_subscript[i] = std::clamp(sample, 1.0, static_cast<double>(geom.samples_per_beam));
    }
  }
  return lut;
}

double analytic_inside_fraction(const SectorGeometry& g) {
  const double span = g.sector_span_deg * kDegToRad;
  const double area_mm2 = span / 2.0 * (g.end_depth_mm * g.end_depth_mm - g.start_depth_mm * g.start_depth_mm);
  const double s = g.mm_per_pixel();
  return area_mm2 / (g.out_width * s * g.out_height * s);
}

Image scan_convert(const Image& frame, const SectorGeometry& geom, const PolarLookup& lut, Method method,
                   DrawStream* stream) {
  if (frame.width() != geom.beam_count || frame.height() != geom.samples_per_beam) {
    throw Error(ErrorCode::DimensionMismatch, "frame is " + std::to_string(frame.width()) + "x" +
                                                  std::to_string(frame.height()) + ", geometry expects " +
                                                  std::to_string(geom.beam_count) + " beams x " +
                                                  std::to_string(geom.samples_per_beam) + " samples");
  }
  if (lut.width != geom.out_width || lut.height != geom.out_height) {
    throw Error(ErrorCode::DimensionMismatch, "lookup does not match geometry");
  }
  std::vector<std::uint8_t> out(lut.inside.size(), geom.background);
  const int w = lut.width;
  const int h = lut.height;

  if (is_nni(method) && is_stochastic(method)) {
    // Stream order is part of the contract, so this path stays sequential.
    const RoundingStrategy strategy = rounding_for(method);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (lut.inside[i]) out[i] = nearest_node(frame, lut.beam_subscript[i], lut.sample_subscript[i], strategy, stream);
    }
    return Image(w, h, std::move(out));
  }

#pragma omp parallel for schedule(static)
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const std::size_t i = static_cast<std::size_t>(r) * w + c;
      if (!lut.inside[i]) continue;
      const double b = lut.beam_subscript[i];
      const double s = lut.sample_subscript[i];
      switch (method) {
        case Method::Bilinear: out[i] = quantize_gray(sample_bilinear(frame, b - 1.0, s - 1.0)); break;
        case Method::Bicubic: out[i] = quantize_gray(sample_bicubic(frame, b - 1.0, s - 1.0)); break;
        default: out[i] = nearest_node(frame, b, s, RoundingStrategy::Ceil, nullptr); break;
      }
    }
  }
  return Image(w, h, std::move(out));
}

Image scan_convert(const Image& frame, const SectorGeometry& geom, Method method, DrawStream* stream) {
  return scan_convert(frame, geom, build_lookup(geom), method, stream);
}

FrameSequence convert_sequence(const FrameSequence& frames, const SectorGeometry& geom, Method method,
                               std::uint32_t seed) {
  const PolarLookup lut = build_lookup(geom);
  const long count = static_cast<long>(frames.frame_count());
  std::vector<std::optional<Image>> converted(count);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < count; ++k) {
    try {
      DrawStream stream = DrawStream::from_seed(derive_seed(seed, static_cast<std::uint64_t>(k)));
      converted[k] = scan_convert(frames.frame(k), geom, lut, method, &stream);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<Image> out;
  out.reserve(count);
  for (auto& img : converted) out.push_back(std::move(*img));
  return FrameSequence(std::move(out), frames.frame_rate_fps());
}

FrameSequence make_phantom(const SectorGeometry& geom, std::size_t frame_count, double frame_rate_fps,
                           std::uint32_t seed) {
  geom.validate();
  const int beams = geom.beam_count;
  const int samples = geom.samples_per_beam;
  std::vector<Image> frames;
  frames.reserve(frame_count);
  for (std::size_t f = 0; f < frame_count; ++f) {
    Mt19937 mt(derive_seed(seed, f));
    const double band_center = samples * (0.55 + 0.1 * std::sin(2.0 * std::numbers::pi * f / 60.0));
    std::vector<std::uint8_t> plane(static_cast<std::size_t>(beams) * samples);
    for (int s = 0; s < samples; ++s) {
      for (int b = 0; b < beams; ++b) {
        // Rayleigh-distributed speckle around a tissue level.
        const double u = (mt.next_u32() + 1.0) / 4294967297.0;
        double v = 45.0 * std::sqrt(-2.0 * std::log(u));
        const double band = std::exp(-std::pow((s - band_center) / (0.03 * samples), 2));
        v += 90.0 * band;
        for (int t = 1; t <= 4; ++t) {
          const double ts = samples * t / 5.0;
          const double tb = beams * (0.3 + 0.1 * t);
          const double d2 = std::pow((s - ts) / (0.008 * samples + 1.0), 2) + std::pow((b - tb) / 1.2, 2);
          v += 200.0 * std::exp(-d2);
        }
        plane[static_cast<std::size_t>(s) * beams + b] = quantize_gray(v);
      }
    }
    frames.emplace_back(beams, samples, std::move(plane));
  }
  return FrameSequence(std::move(frames), frame_rate_fps);
}

}  // namespace srinterp
