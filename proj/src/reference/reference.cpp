#include "srinterp/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "srinterp/interp.hpp"

namespace srinterp::reference {

namespace {

long ceil_div(long a, long b) { return (a + b - 1) / b; }

int clamp_to(long i, int n) { return static_cast<int>(std::clamp<long>(i, 0, n - 1)); }

std::uint8_t to_gray(double v) { return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0)); }

}  // namespace

std::vector<int> ceil_map(int src_len, int ratio) {
  std::vector<int> out;
  for (int i = 1; i <= src_len * ratio; ++i) out.push_back(static_cast<int>(ceil_div(i, ratio)));
  return out;
}

std::vector<int> sr_eq3_map(int src_len, int ratio, const std::vector<int>& r_tenths) {
  std::vector<int> out;
  for (int i = 1; i <= src_len * ratio; ++i) {
    const long t = r_tenths.at(i - 1);
    long index;
    if (i % ratio == 0) {
      index = i / ratio;
    } else if (10L * i > t * ratio) {
      // x - r = (10 i - t ratio) / (10 ratio) > 0
      index = ceil_div(10L * i - t * ratio, 10L * ratio);
    } else {
      index = ceil_div(i, ratio);
    }
    out.push_back(static_cast<int>(std::clamp<long>(index, 1, src_len)));
  }
  return out;
}

Image nni_upscale(const Image& src, int ratio, const std::vector<int>& row_map, const std::vector<int>& col_map) {
  const int w = src.width() * ratio;
  const int h = src.height() * ratio;
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) out.push_back(src.at(col_map[x] - 1, row_map[y] - 1));
  }
  return Image(w, h, std::move(out));
}

Image bilinear_upscale(const Image& src, int ratio) {
  const int w = src.width() * ratio;
  const int h = src.height() * ratio;
  std::vector<std::uint8_t> out;
  for (int y = 0; y < h; ++y) {
    const double py = (y + 1) / static_cast<double>(ratio) - 1.0;
    const double fy = std::floor(py);
    const int y0 = clamp_to(static_cast<long>(fy), src.height());
    const int y1 = clamp_to(static_cast<long>(fy) + 1, src.height());
    const double wy = py - fy;
    for (int x = 0; x < w; ++x) {
      const double px = (x + 1) / static_cast<double>(ratio) - 1.0;
      const double fx = std::floor(px);
      const int x0 = clamp_to(static_cast<long>(fx), src.width());
      const int x1 = clamp_to(static_cast<long>(fx) + 1, src.width());
      const double wx = px - fx;
      const double top = (1.0 - wx) * src.at(x0, y0) + wx * src.at(x1, y0);
      const double bottom = (1.0 - wx) * src.at(x0, y1) + wx * src.at(x1, y1);
      out.push_back(to_gray((1.0 - wy) * top + wy * bottom));
    }
  }
  return Image(w, h, std::move(out));
}

Image bicubic_upscale(const Image& src, int ratio) {
  const int w = src.width() * ratio;
  const int h = src.height() * ratio;
  std::vector<std::uint8_t> out;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.push_back(to_gray(sample_bicubic(src, (x + 1) / static_cast<double>(ratio) - 1.0,
                                           (y + 1) / static_cast<double>(ratio) - 1.0)));
    }
  }
  return Image(w, h, std::move(out));
}

Image gaussian_smooth(const Image& img, double sigma, int radius) {
  std::vector<double> weights;
  double total = 0.0;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      weights.push_back(std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma)));
      total += weights.back();
    }
  }
  std::vector<std::uint8_t> out;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      double acc = 0.0;
      std::size_t k = 0;
      for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
          acc += weights[k++] * img.at(clamp_to(x + dx, img.width()), clamp_to(y + dy, img.height()));
        }
      }
      out.push_back(to_gray(acc / total));
    }
  }
  return Image(img.width(), img.height(), std::move(out));
}

double mse(const Image& a, const Image& b) {
  double sum = 0.0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      const double d = static_cast<double>(a.at(x, y)) - b.at(x, y);
      sum += d * d;
    }
  }
  return sum / (static_cast<double>(a.width()) * a.height());
}

double ssim(const Image& a, const Image& b) {
  constexpr int kWin = 11;
  constexpr double kSigma = 1.5;
  double w[kWin][kWin];
  double total = 0.0;
  for (int i = 0; i < kWin; ++i) {
    for (int j = 0; j < kWin; ++j) {
      const double di = i - kWin / 2, dj = j - kWin / 2;
      w[i][j] = std::exp(-(di * di + dj * dj) / (2.0 * kSigma * kSigma));
      total += w[i][j];
    }
  }
  const double c1 = (0.01 * 255) * (0.01 * 255);
  const double c2 = (0.03 * 255) * (0.03 * 255);
  double sum = 0.0;
  long count = 0;
  for (int y = 0; y + kWin <= a.height(); ++y) {
    for (int x = 0; x + kWin <= a.width(); ++x) {
      double ma = 0, mb = 0;
      for (int i = 0; i < kWin; ++i)
        for (int j = 0; j < kWin; ++j) {
          ma += w[i][j] / total * a.at(x + j, y + i);
          mb += w[i][j] / total * b.at(x + j, y + i);
        }
      double va = 0, vb = 0, cov = 0;
      for (int i = 0; i < kWin; ++i)
        for (int j = 0; j < kWin; ++j) {
          const double da = a.at(x + j, y + i) - ma;
          const double db = b.at(x + j, y + i) - mb;
          va += w[i][j] / total * da * da;
          vb += w[i][j] / total * db * db;
          cov += w[i][j] / total * da * db;
        }
      sum += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++count;
    }
  }
  return sum / count;
}

Image scan_convert(const Image& frame, const SectorGeometry& g, Method method) {
  const double s = g.end_depth_mm / g.out_height;
  const double half = g.sector_span_deg * (std::numbers::pi / 180.0) / 2.0;
  std::vector<std::uint8_t> out;
  for (int r = 0; r < g.out_height; ++r) {
    for (int c = 0; c < g.out_width; ++c) {
      const double x = (c + 0.5 - g.out_width / 2.0) * s;
      const double z = (r + 0.5) * s;
      const double rho = std::hypot(x, z);
      const double theta = std::atan2(x, z);
      if (rho < g.start_depth_mm || rho > g.end_depth_mm || std::abs(theta) > half) {
        out.push_back(g.background);
        continue;
      }
      const double beam = std::clamp(1.0 + (theta + half) / (2 * half) * (g.beam_count - 1), 1.0,
                                     static_cast<double>(g.beam_count));
      const double sample =
          std::clamp(1.0 + (rho - g.start_depth_mm) / (g.end_depth_mm - g.start_depth_mm) * (g.samples_per_beam - 1),
                     1.0, static_cast<double>(g.samples_per_beam));
      if (method == Method::Bilinear) {
        out.push_back(to_gray(sample_bilinear(frame, beam - 1, sample - 1)));
      } else if (method == Method::Bicubic) {
        out.push_back(to_gray(sample_bicubic(frame, beam - 1, sample - 1)));
      } else {
        const int bi = std::clamp(static_cast<int>(std::ceil(beam - 1e-9)), 1, g.beam_count);
        const int si = std::clamp(static_cast<int>(std::ceil(sample - 1e-9)), 1, g.samples_per_beam);
        out.push_back(frame.at(bi - 1, si - 1));
      }
    }
  }
  return Image(g.out_width, g.out_height, std::move(out));
}

}  // namespace srinterp::reference
