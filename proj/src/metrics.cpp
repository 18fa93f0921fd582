#include "srinterp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "srinterp/error.hpp"
#include "srinterp/filters.hpp"

namespace srinterp {

namespace {

void check_same_size(const Image& a, const Image& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.width()) + "x" + std::to_string(a.height()) + " vs " +
                    std::to_string(b.width()) + "x" + std::to_string(b.height()));
  }
}

// Valid-region separable filter: output is (w - n + 1) x (h - n + 1).
std::vector<double> filter_valid(const std::vector<double>& plane, int w, int h,
                                 const std::vector<double>& taps) {
  const int n = static_cast<int>(taps.size());
  const int ow = w - n + 1;
  const int oh = h - n + 1;
  std::vector<double> horiz(static_cast<std::size_t>(ow) * h);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    const double* src = plane.data() + static_cast<std::size_t>(y) * w;
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += taps[k] * src[x + k];
      horiz[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += taps[k] * horiz[static_cast<std::size_t>(y + k) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

double sample_variance(std::span<const double> v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / (v.size() - 1);
}

double sample_stddev(std::span<const double> v) { return std::sqrt(sample_variance(v)); }

// A block shows noticeable distortion when any run of segment_length samples
// along one of its four edges is nearly flat in MSCN terms.
bool has_flat_edge_segment(const std::vector<double>& block, int n, const PiqeParams& p) {
  std::vector<double> edges[4];
  for (int i = 0; i < n; ++i) {
    edges[0].push_back(block[i]);                                       // top
    edges[1].push_back(block[static_cast<std::size_t>(i) * n + n - 1]);  // right
    edges[2].push_back(block[static_cast<std::size_t>(n - 1) * n + i]);  // bottom
    edges[3].push_back(block[static_cast<std::size_t>(i) * n]);          // left
  }
  const int segments = n - p.segment_length + 1;
  for (int s = 0; s < segments; ++s) {
    for (const auto& edge : edges) {
      if (sample_stddev(std::span(edge).subspan(s, p.segment_length)) < p.segment_threshold) return true;
    }
  }
  return false;
}

// Noise shows up as a block whose center columns spread about as much as
// the surround does.
bool is_noise_block(const std::vector<double>& block, int n, double block_variance) {
  const int c1 = n / 2 - 1;
  const int c2 = n / 2;
  std::vector<double> center, surround;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const double v = block[static_cast<std::size_t>(y) * n + x];
      (x == c1 || x == c2 ? center : surround).push_back(v);
    }
  }
  const double sigma = std::sqrt(block_variance);
  const double surround_dev = sample_stddev(surround);
  if (surround_dev == 0.0) return false;
  const double center_surround = sample_stddev(center) / surround_dev;
  const double denom = std::max(sigma, center_surround);
  if (denom == 0.0) return false;
  const double beta = std::abs(sigma - center_surround) / denom;
  return sigma > 2.0 * beta;
}

}  // namespace

double mse(const Image& a, const Image& b) {
  check_same_size(a, b);
  const auto sa = a.samples();
  const auto sb = b.samples();
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const int d = static_cast<int>(sa[i]) - static_cast<int>(sb[i]);
    sum += static_cast<std::uint64_t>(d * d);
  }
  return static_cast<double>(sum) / static_cast<double>(sa.size());
}

double psnr_from_mse(double mse_value) {
  if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse_value);
}

double psnr(const Image& a, const Image& b) { return psnr_from_mse(mse(a, b)); }

double ssim(const Image& a, const Image& b, const SsimParams& params) {
  check_same_size(a, b);
  if (a.width() < params.window || a.height() < params.window) {
    throw Error(ErrorCode::ImageTooSmall, "SSIM needs both dimensions >= " + std::to_string(params.window));
  }
  const int w = a.width();
  const int h = a.height();
  const std::size_t n = a.size();
  std::vector<double> pa(n), pb(n), aa(n), bb(n), ab(n);
  for (std::size_t i = 0; i < n; ++i) {
    pa[i] = a.samples()[i];
    pb[i] = b.samples()[i];
    aa[i] = pa[i] * pa[i];
    bb[i] = pb[i] * pb[i];
    ab[i] = pa[i] * pb[i];
  }
  const auto taps = gaussian_kernel(params.sigma, params.window / 2);
  const auto mu_a = filter_valid(pa, w, h, taps);
  const auto mu_b = filter_valid(pb, w, h, taps);
  const auto e_aa = filter_valid(aa, w, h, taps);
  const auto e_bb = filter_valid(bb, w, h, taps);
  const auto e_ab = filter_valid(ab, w, h, taps);

  const double c1 = std::pow(params.k1 * params.dynamic_range, 2);
  const double c2 = std::pow(params.k2 * params.dynamic_range, 2);
  const int ow = w - params.window + 1;
  const int oh = h - params.window + 1;
  std::vector<double> row_sums(oh);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < oh; ++y) {
    double acc = 0.0;
    for (int x = 0; x < ow; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * ow + x;
      const double ma = mu_a[i], mb = mu_b[i];
      const double va = e_aa[i] - ma * ma;
      const double vb = e_bb[i] - mb * mb;
      const double cov = e_ab[i] - ma * mb;
      acc += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
    }
    row_sums[y] = acc;
  }
  // Ordered reduction keeps the result independent of the thread count.
  return std::accumulate(row_sums.begin(), row_sums.end(), 0.0) / (static_cast<double>(ow) * oh);
}

FrMetrics full_reference(const Image& reference, const Image& test) {
  FrMetrics m;
  m.mse = mse(reference, test);
  m.psnr = psnr_from_mse(m.mse);
  m.ssim = ssim(reference, test);
  return m;
}

std::string_view to_string(QualityLabel label) {
  switch (label) {
    case QualityLabel::Excellent: return "Excellent";
    case QualityLabel::Good: return "Good";
    case QualityLabel::Fair: return "Fair";
    case QualityLabel::Poor: return "Poor";
    case QualityLabel::Bad: return "Bad";
  }
  return "?";
}

QualityLabel quality_label(double score) {
  const double s = std::clamp(std::floor(score + 0.5), 0.0, 100.0);
  if (s <= 20) return QualityLabel::Excellent;
  if (s <= 35) return QualityLabel::Good;
  if (s <= 50) return QualityLabel::Fair;
  if (s <= 80) return QualityLabel::Poor;
  return QualityLabel::Bad;
}

std::vector<double> mscn(const Image& img, double sigma, int radius) {
  const std::size_t n = img.size();
  std::vector<double> plane(img.samples().begin(), img.samples().end());
  std::vector<double> squares(n);
  for (std::size_t i = 0; i < n; ++i) squares[i] = plane[i] * plane[i];
  const auto taps = gaussian_kernel(sigma, radius);
  const auto mu = gaussian_blur(plane, img.width(), img.height(), taps);
  const auto mu2 = gaussian_blur(squares, img.width(), img.height(), taps);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dev = std::sqrt(std::abs(mu2[i] - mu[i] * mu[i]));
    out[i] = (plane[i] - mu[i]) / (dev + 1.0);
  }
  return out;
}

PiqeResult piqe(const Image& img, const PiqeParams& p) {
  const int bs = p.block_size;
  const int w = img.width() / bs * bs;
  const int h = img.height() / bs * bs;
  if (w < 64 || h < 64) {
    throw Error(ErrorCode::ImageTooSmall, "PIQE needs at least 64x64 after trimming to multiples of " +
                                              std::to_string(bs));
  }
  std::vector<std::uint8_t> trimmed(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    const auto row = img.row(y);
    std::copy(row.begin(), row.begin() + w, trimmed.begin() + static_cast<std::size_t>(y) * w);
  }
  const auto coeffs = mscn(Image(w, h, std::move(trimmed)), p.mscn_sigma, p.mscn_radius);

  const int bw = w / bs;
  const int bh = h / bs;
  struct BlockOutcome {
    bool active = false, distorted = false, noisy = false;
    double penalty = 0.0;
  };
  std::vector<BlockOutcome> blocks(static_cast<std::size_t>(bw) * bh);
#pragma omp parallel for schedule(static)
  for (int by = 0; by < bh; ++by) {
    std::vector<double> block(static_cast<std::size_t>(bs) * bs);
    for (int bx = 0; bx < bw; ++bx) {
      for (int y = 0; y < bs; ++y) {
        for (int x = 0; x < bs; ++x) {
          block[static_cast<std::size_t>(y) * bs + x] =
              coeffs[static_cast<std::size_t>(by * bs + y) * w + bx * bs + x];
        }
      }
      BlockOutcome& o = blocks[static_cast<std::size_t>(by) * bw + bx];
      const double variance = sample_variance(block);
      if (!(variance > p.activity_threshold)) continue;
      o.active = true;
      o.distorted = has_flat_edge_segment(block, bs, p);
      o.noisy = is_noise_block(block, bs, variance);
      o.penalty = (o.distorted ? 1.0 - variance : 0.0) + (o.noisy ? variance : 0.0);
    }
  }

  PiqeResult result;
  double penalty_sum = 0.0;
  int flagged = 0;
  for (const BlockOutcome& o : blocks) {
    if (!o.active) continue;
    ++result.active_block_count;
    result.distorted_block_count += o.distorted;
    result.noisy_block_count += o.noisy;
    flagged += (o.distorted || o.noisy);
    penalty_sum += o.penalty;
  }
  constexpr double kStabilizer = 1.0;
  const double raw = (penalty_sum + kStabilizer) / (kStabilizer + result.active_block_count) * 100.0;
  result.score = std::clamp(raw, 0.0, 100.0);
  result.label = quality_label(result.score);
  result.distorted_block_ratio =
      result.active_block_count > 0 ? static_cast<double>(flagged) / result.active_block_count : 0.0;
  return result;
}

std::size_t piqe_sample_count(double duration_ms, double interval_ms) {
  if (!(interval_ms > 0.0)) throw Error(ErrorCode::InvalidArgument, "interval must be positive");
  std::size_t count = 0;
  while (count * interval_ms < duration_ms) ++count;
  return std::max<std::size_t>(count, 1);
}

PiqeSeries piqe_series(const FrameSequence& frames, double interval_ms, const PiqeParams& params) {
  const std::size_t count = piqe_sample_count(frames.duration_ms(), interval_ms);
  PiqeSeries series;
  series.samples.resize(count);
  // Exceptions cannot cross the parallel region; collect the first one.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < static_cast<long>(count); ++k) {
    try {
      PiqeSample& s = series.samples[k];
      s.timestamp_ms = k * interval_ms;
      const double position = s.timestamp_ms * frames.frame_rate_fps() / 1000.0;
      s.frame_index = std::min(static_cast<std::size_t>(std::floor(position + 0.5)), frames.frame_count() - 1);
      s.result = piqe(frames.frame(s.frame_index), params);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  double sum = 0.0;
  for (const auto& s : series.samples) sum += s.result.score;
  series.mean_score = sum / count;
  return series;
}

}  // namespace srinterp
