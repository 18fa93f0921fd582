#include "srinterp/interp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "srinterp/error.hpp"

namespace srinterp {

namespace {

void check_ratio(double ratio) {
  if (!(ratio >= 1.0) || !std::isfinite(ratio)) {
    throw Error(ErrorCode::InvalidArgument, "scale ratio must be >= 1, got " + std::to_string(ratio));
  }
}

int clamp_index(long i, int n) { return static_cast<int>(std::clamp<long>(i, 0, n - 1)); }

// Two-tap linear weights for every destination position of one axis.
struct LinearTaps {
  std::vector<int> lo, hi;
  std::vector<double> frac;
};

LinearTaps linear_taps(int src_len, double ratio, int dest_len) {
  LinearTaps t;
  t.lo.resize(dest_len);
  t.hi.resize(dest_len);
  t.frac.resize(dest_len);
  for (int i = 0; i < dest_len; ++i) {
    const double pos = (i + 1) / ratio - 1.0;
    const double base = std::floor(pos);
    t.lo[i] = clamp_index(static_cast<long>(base), src_len);
    t.hi[i] = clamp_index(static_cast<long>(base) + 1, src_len);
    t.frac[i] = pos - base;
  }
  return t;
}

struct CubicTaps {
  std::vector<std::array<int, 4>> index;
  std::vector<std::array<double, 4>> weight;
};

CubicTaps cubic_taps(int src_len, double ratio, int dest_len) {
  CubicTaps t;
  t.index.resize(dest_len);
  t.weight.resize(dest_len);
  for (int i = 0; i < dest_len; ++i) {
    const double pos = (i + 1) / ratio - 1.0;
    const double base = std::floor(pos);
    const double frac = pos - base;
    for (int k = 0; k < 4; ++k) {
      t.index[i][k] = clamp_index(static_cast<long>(base) + k - 1, src_len);
      t.weight[i][k] = cubic_kernel(frac - (k - 1));
    }
  }
  return t;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::NniDr: return "nni-dr";
    case Method::NniSrEq3: return "nni-sr-eq3";
    case Method::NniSrMode1: return "nni-sr-mode1";
    case Method::NniSrMode2: return "nni-sr-mode2";
    case Method::Bilinear: return "bilinear";
    case Method::Bicubic: return "bicubic";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "nni-dr") return Method::NniDr;
  if (name == "nni-sr-eq3" || name == "nni-sr") return Method::NniSrEq3;
  if (name == "nni-sr-mode1") return Method::NniSrMode1;
  if (name == "nni-sr-mode2") return Method::NniSrMode2;
  if (name == "bilinear") return Method::Bilinear;
  if (name == "bicubic") return Method::Bicubic;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

RoundingStrategy rounding_for(Method m) {
  switch (m) {
    case Method::NniDr: return RoundingStrategy::Ceil;
    case Method::NniSrEq3: return RoundingStrategy::SrEq3;
    case Method::NniSrMode1: return RoundingStrategy::SrMode1;
    case Method::NniSrMode2: return RoundingStrategy::SrMode2;
    default: break;
  }
  throw Error(ErrorCode::InvalidArgument, std::string(to_string(m)) + " is not a nearest-neighbor method");
}

int scaled_length(int src_len, double ratio) {
  const double exact = src_len * ratio;
  const double nearest = std::round(exact);
  if (std::abs(exact - nearest) < 1e-9 * std::max(1.0, exact)) return static_cast<int>(nearest);
  return static_cast<int>(std::floor(exact));
}

SubscriptMap build_subscript_map(int src_len, double ratio, RoundingStrategy strategy,
                                 DrawStream* stream) {
  if (src_len < 1) throw Error(ErrorCode::InvalidArgument, "source length must be >= 1");
  check_ratio(ratio);
  SubscriptMap map{ratio, src_len, {}};
  const int dest_len = scaled_length(src_len, ratio);
  map.src_indices.reserve(dest_len);
  for (int i = 1; i <= dest_len; ++i) {
    const RoundingOutcome r = round_subscript(Subscript(i / ratio), strategy, stream);
    map.src_indices.push_back(static_cast<int>(std::clamp<long>(r.index, 1, src_len)));
  }
  return map;
}

Image apply_maps(const Image& src, const SubscriptMap& rows, const SubscriptMap& cols) {
  if (rows.src_len != src.height() || cols.src_len != src.width()) {
    throw Error(ErrorCode::DimensionMismatch, "subscript maps do not match the source image");
  }
  const int out_w = cols.dest_len();
  const int out_h = rows.dest_len();
  std::vector<std::uint8_t> out(static_cast<std::size_t>(out_w) * out_h);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < out_h; ++y) {
    const auto src_row = src.row(rows.src_indices[y] - 1);
    std::uint8_t* dst = out.data() + static_cast<std::size_t>(y) * out_w;
    for (int x = 0; x < out_w; ++x) dst[x] = src_row[cols.src_indices[x] - 1];
  }
  return Image(out_w, out_h, std::move(out));
}

Image nni_upscale(const Image& src, double ratio, RoundingStrategy strategy, DrawStream* stream) {
  const SubscriptMap rows = build_subscript_map(src.height(), ratio, strategy, stream);
  const SubscriptMap cols = build_subscript_map(src.width(), ratio, strategy, stream);
  return apply_maps(src, rows, cols);
}

double cubic_kernel(double t, double a) {
  const double x = std::abs(t);
  if (x <= 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
  if (x < 2.0) return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
  return 0.0;
}

std::uint8_t quantize_gray(double v) {
  const double r = std::floor(v + 0.5);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

Image bilinear_upscale(const Image& src, double ratio) {
  check_ratio(ratio);
  const int out_w = scaled_length(src.width(), ratio);
  const int out_h = scaled_length(src.height(), ratio);
  const LinearTaps tx = linear_taps(src.width(), ratio, out_w);
  const LinearTaps ty = linear_taps(src.height(), ratio, out_h);
  std::vector<std::uint8_t> out(static_cast<std::size_t>(out_w) * out_h);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < out_h; ++y) {
    const auto r0 = src.row(ty.lo[y]);
    const auto r1 = src.row(ty.hi[y]);
    const double wy = ty.frac[y];
    std::uint8_t* dst = out.data() + static_cast<std::size_t>(y) * out_w;
    for (int x = 0; x < out_w; ++x) {
      const double wx = tx.frac[x];
      const double top = (1.0 - wx) * r0[tx.lo[x]] + wx * r0[tx.hi[x]];
      const double bottom = (1.0 - wx) * r1[tx.lo[x]] + wx * r1[tx.hi[x]];
      dst[x] = quantize_gray((1.0 - wy) * top + wy * bottom);
    }
  }
  return Image(out_w, out_h, std::move(out));
}

Image bicubic_upscale(const Image& src, double ratio) {
  check_ratio(ratio);
  const int out_w = scaled_length(src.width(), ratio);
  const int out_h = scaled_length(src.height(), ratio);
  const CubicTaps tx = cubic_taps(src.width(), ratio, out_w);
  const CubicTaps ty = cubic_taps(src.height(), ratio, out_h);
  std::vector<std::uint8_t> out(static_cast<std::size_t>(out_w) * out_h);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < out_h; ++y) {
    std::uint8_t* dst = out.data() + static_cast<std::size_t>(y) * out_w;
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int m = 0; m < 4; ++m) {
        const auto row = src.row(ty.index[y][m]);
        double h = 0.0;
        for (int n = 0; n < 4; ++n) h += tx.weight[x][n] * row[tx.index[x][n]];
        acc += ty.weight[y][m] * h;
      }
      dst[x] = quantize_gray(acc);
    }
  }
  return Image(out_w, out_h, std::move(out));
}

Image upscale(const Image& src, double ratio, Method method, DrawStream* stream) {
  switch (method) {
    case Method::Bilinear: return bilinear_upscale(src, ratio);
    case Method::Bicubic: return bicubic_upscale(src, ratio);
    default: return nni_upscale(src, ratio, rounding_for(method), stream);
  }
}

double sample_bilinear(const Image& src, double x, double y) {
  const double bx = std::floor(x);
  const double by = std::floor(y);
  const double wx = x - bx;
  const double wy = y - by;
  const int x0 = clamp_index(static_cast<long>(bx), src.width());
  const int x1 = clamp_index(static_cast<long>(bx) + 1, src.width());
  const int y0 = clamp_index(static_cast<long>(by), src.height());
  const int y1 = clamp_index(static_cast<long>(by) + 1, src.height());
  const double top = (1.0 - wx) * src.at(x0, y0) + wx * src.at(x1, y0);
  const double bottom = (1.0 - wx) * src.at(x0, y1) + wx * src.at(x1, y1);
  return (1.0 - wy) * top + wy * bottom;
}

double sample_bicubic(const Image& src, double x, double y) {
  const double bx = std::floor(x);
  const double by = std::floor(y);
  std::array<double, 4> wx{}, wy{};
  std::array<int, 4> ix{}, iy{};
  for (int k = 0; k < 4; ++k) {
    wx[k] = cubic_kernel(x - bx - (k - 1));
    wy[k] = cubic_kernel(y - by - (k - 1));
    ix[k] = clamp_index(static_cast<long>(bx) + k - 1, src.width());
    iy[k] = clamp_index(static_cast<long>(by) + k - 1, src.height());
  }
  double acc = 0.0;
  for (int m = 0; m < 4; ++m) {
    double h = 0.0;
    for (int n = 0; n < 4; ++n) h += wx[n] * src.at(ix[n], iy[m]);
    acc += wy[m] * h;
  }
  return acc;
}

}  // namespace srinterp
