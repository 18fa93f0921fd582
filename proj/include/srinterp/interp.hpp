#pragma once

#include <string_view>
#include <vector>

#include "srinterp/raster.hpp"
#include "srinterp/rounding.hpp"

namespace srinterp {

enum class Method { NniDr, NniSrEq3, NniSrMode1, NniSrMode2, Bilinear, Bicubic };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

constexpr bool is_nni(Method m) { return m != Method::Bilinear && m != Method::Bicubic; }
RoundingStrategy rounding_for(Method nni_method);
constexpr bool is_stochastic(Method m) {
  return m == Method::NniSrEq3 || m == Method::NniSrMode1 || m == Method::NniSrMode2;
}

/// Destination length for a scale factor: floor(src_len * ratio), exact for
/// integer ratios.
int scaled_length(int src_len, double ratio);

/// 1-based source index for every destination position along one axis.
/// Destination i (1-based) has subscript i / ratio before rounding.
struct SubscriptMap {
  double ratio = 1.0;
  int src_len = 0;
  std::vector<int> src_indices;

  int dest_len() const noexcept { return static_cast<int>(src_indices.size()); }
};

SubscriptMap build_subscript_map(int src_len, double ratio, RoundingStrategy strategy,
                                 DrawStream* stream);

/// out(y, x) = src(rows[y], cols[x]) with 1-based maps. Pure, row-parallel.
Image apply_maps(const Image& src, const SubscriptMap& rows, const SubscriptMap& cols);

/// Builds the row map, then the column map (draws consumed in that order),
/// then applies both.
Image nni_upscale(const Image& src, double ratio, RoundingStrategy strategy, DrawStream* stream);

Image bilinear_upscale(const Image& src, double ratio);
Image bicubic_upscale(const Image& src, double ratio);

/// Dispatch for any method; `stream` may be null for deterministic methods.
Image upscale(const Image& src, double ratio, Method method, DrawStream* stream);

/// Cubic convolution kernel with parameter a (support [-2, 2]).
double cubic_kernel(double t, double a = -0.5);

/// Round half up, then clamp to [0, 255].
std::uint8_t quantize_gray(double v);

/// Point samplers at 0-based fractional coordinates with clamp-to-edge.
double sample_bilinear(const Image& src, double x, double y);
double sample_bicubic(const Image& src, double x, double y);

}  // namespace srinterp
