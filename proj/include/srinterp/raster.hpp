#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace srinterp {

using Bytes = std::vector<std::uint8_t>;

/// Row-major 8-bit grayscale raster. Immutable once built.
class Image {
 public:
  Image(int width, int height, std::vector<std::uint8_t> samples);
  Image(int width, int height, std::uint8_t fill);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return samples_.size(); }

  std::uint8_t at(int x, int y) const noexcept {
    return samples_[static_cast<std::size_t>(y) * width_ + x];
  }
  std::span<const std::uint8_t> samples() const noexcept { return samples_; }
  std::span<const std::uint8_t> row(int y) const noexcept {
    return std::span(samples_).subspan(static_cast<std::size_t>(y) * width_, width_);
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> samples_;
};

struct Histogram {
  std::array<std::uint64_t, 256> counts{};
  std::uint64_t total = 0;
};

Histogram histogram(const Image& img);

/// Gray levels with a zero count, ascending.
std::vector<int> empty_bins(const Histogram& h);

/// Distinct gray levels present in the image, ascending.
std::vector<int> value_set(const Image& img);

/// Ordered frames sharing one size, plus their acquisition rate.
class FrameSequence {
 public:
  FrameSequence(std::vector<Image> frames, double frame_rate_fps);

  int width() const noexcept { return frames_.front().width(); }
  int height() const noexcept { return frames_.front().height(); }
  std::size_t frame_count() const noexcept { return frames_.size(); }
  double frame_rate_fps() const noexcept { return frame_rate_fps_; }
  double duration_ms() const noexcept { return frame_count() / frame_rate_fps_ * 1000.0; }

  const Image& frame(std::size_t i) const { return frames_.at(i); }
  std::span<const Image> frames() const noexcept { return frames_; }

  friend bool operator==(const FrameSequence&, const FrameSequence&) = default;

 private:
  std::vector<Image> frames_;
  double frame_rate_fps_;
};

// Binary PGM (P5, maxval 255).
Image read_pgm(std::span<const std::uint8_t> bytes);
Bytes write_pgm(const Image& img);

// SRIF frame container: "SRIF", u32 width, u32 height, u32 frame_count,
// f64 frame_rate_fps (all little-endian), then frame_count planes of
// width*height bytes.
inline constexpr std::size_t kSrifHeaderSize = 24;
FrameSequence read_frames(std::span<const std::uint8_t> bytes);
Bytes write_frames(const FrameSequence& frames);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

inline Image load_pgm(const std::filesystem::path& path) { return read_pgm(read_file(path)); }
inline void save_pgm(const std::filesystem::path& path, const Image& img) { write_file(path, write_pgm(img)); }

}  // namespace srinterp
