#pragma once

#include <string_view>
#include <vector>

#include "srinterp/raster.hpp"

namespace srinterp {

/// Mean of squared differences. Throws DimensionMismatch on size mismatch.
double mse(const Image& a, const Image& b);

/// 10*log10(255^2 / mse); +infinity when the images are identical.
double psnr(const Image& a, const Image& b);
double psnr_from_mse(double mse_value);

struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
};

/// Single-scale SSIM averaged over all fully-contained window positions.
/// Both dimensions must be at least the window size (ImageTooSmall).
double ssim(const Image& a, const Image& b, const SsimParams& params = {});

struct FrMetrics {
  double mse = 0.0;
  double psnr = 0.0;  // +infinity for identical images
  double ssim = 0.0;
};

FrMetrics full_reference(const Image& reference, const Image& test);

enum class QualityLabel { Excellent, Good, Fair, Poor, Bad };

std::string_view to_string(QualityLabel label);

/// Band lookup on the rounded score: [0,20] Excellent, [21,35] Good,
/// [36,50] Fair, [51,80] Poor, [81,100] Bad.
QualityLabel quality_label(double score);

struct PiqeResult {
  double score = 100.0;
  QualityLabel label = QualityLabel::Bad;
  int active_block_count = 0;
  int distorted_block_count = 0;
  int noisy_block_count = 0;
  double distorted_block_ratio = 0.0;  // distorted or noisy blocks / active blocks
};

struct PiqeParams {
  int block_size = 16;
  double activity_threshold = 0.1;
  double segment_threshold = 0.1;
  int segment_length = 6;
  double mscn_sigma = 7.0 / 6.0;
  int mscn_radius = 3;
};

/// Block-based no-reference quality score in [0, 100]; lower is better.
/// The image is trimmed to a multiple of the block size and must be at
/// least 64x64 afterwards.
PiqeResult piqe(const Image& img, const PiqeParams& params = {});

/// Mean-subtracted contrast-normalized coefficients (local Gaussian mean and
/// deviation, stabilizing constant 1).
std::vector<double> mscn(const Image& img, double sigma, int radius);

struct PiqeSample {
  double timestamp_ms = 0.0;
  std::size_t frame_index = 0;
  PiqeResult result;
};

struct PiqeSeries {
  std::vector<PiqeSample> samples;
  double mean_score = 0.0;
};

/// Scores the frame nearest to t = 0, interval, 2*interval, ... for every
/// t below the sequence duration.
PiqeSeries piqe_series(const FrameSequence& frames, double interval_ms, const PiqeParams& params = {});

/// Number of sample instants the series evaluates.
std::size_t piqe_sample_count(double duration_ms, double interval_ms);

}  // namespace srinterp
