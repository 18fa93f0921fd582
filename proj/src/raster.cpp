#include "srinterp/raster.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "srinterp/error.hpp"

namespace srinterp {

Image::Image(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "image must be at least 1x1, got " + std::to_string(width) + "x" + std::to_string(height));
  }
  if (samples_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::DimensionMismatch, "sample count " + std::to_string(samples_.size()) +
                                                  " does not match " + std::to_string(width) + "x" +
                                                  std::to_string(height));
  }
}

Image::Image(int width, int height, std::uint8_t fill)
    : Image(width, height,
            std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0), fill)) {}

Histogram histogram(const Image& img) {
  Histogram h;
  for (std::uint8_t v : img.samples()) ++h.counts[v];
  h.total = img.size();
  return h;
}

std::vector<int> empty_bins(const Histogram& h) {
  std::vector<int> out;
  for (int v = 0; v < 256; ++v) {
    if (h.counts[v] == 0) out.push_back(v);
  }
  return out;
}

std::vector<int> value_set(const Image& img) {
  const Histogram h = histogram(img);
  std::vector<int> out;
  for (int v = 0; v < 256; ++v) {
    if (h.counts[v] != 0) out.push_back(v);
  }
  return out;
}

FrameSequence::FrameSequence(std::vector<Image> frames, double frame_rate_fps)
    : frames_(std::move(frames)), frame_rate_fps_(frame_rate_fps) {
  if (frames_.empty()) throw Error(ErrorCode::ZeroFrames, "frame sequence needs at least one frame");
  if (!(frame_rate_fps > 0.0) || !std::isfinite(frame_rate_fps)) {
    throw Error(ErrorCode::InvalidArgument, "frame rate must be positive");
  }
  for (const Image& f : frames_) {
    if (f.width() != frames_.front().width() || f.height() != frames_.front().height()) {
      throw Error(ErrorCode::DimensionMismatch, "all frames must share dimensions");
    }
  }
}

// --- PGM ---------------------------------------------------------------

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_whitespace_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  unsigned long read_number(const char* field) {
    skip_whitespace_and_comments();
    unsigned long value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (++digits > 9) throw Error(ErrorCode::MalformedHeader, std::string(field) + " too large");
    }
    if (digits == 0) throw Error(ErrorCode::MalformedHeader, std::string("missing ") + field);
    return value;
  }

  std::size_t& pos() { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void put_u32(Bytes& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[at + i]) << (8 * i);
  return v;
}

}  // namespace

Image read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw Error(ErrorCode::MalformedHeader, "expected binary PGM magic 'P5'");
  }
  HeaderReader reader(bytes.subspan(2));
  const auto width = reader.read_number("width");
  const auto height = reader.read_number("height");
  const auto maxval = reader.read_number("maxval");
  if (width == 0 || height == 0) throw Error(ErrorCode::MalformedHeader, "zero image dimension");
  if (maxval != 255) {
    throw Error(ErrorCode::UnsupportedMaxval, "only maxval 255 is supported, got " + std::to_string(maxval));
  }
  std::size_t pos = 2 + reader.pos();
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw Error(ErrorCode::MalformedHeader, "missing whitespace after maxval");
  }
  ++pos;
  const std::size_t need = static_cast<std::size_t>(width) * height;
  if (bytes.size() - pos < need) {
    throw Error(ErrorCode::TruncatedPayload, "payload holds " + std::to_string(bytes.size() - pos) +
                                                 " bytes, need " + std::to_string(need));
  }
  std::vector<std::uint8_t> samples(bytes.begin() + pos, bytes.begin() + pos + need);
  return Image(static_cast<int>(width), static_cast<int>(height), std::move(samples));
}

Bytes write_pgm(const Image& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  Bytes out(header.begin(), header.end());
  out.insert(out.end(), img.samples().begin(), img.samples().end());
  return out;
}

// --- SRIF --------------------------------------------------------------

FrameSequence read_frames(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), "SRIF", 4) != 0) {
    throw Error(ErrorCode::BadMagic, "expected 'SRIF' magic");
  }
  if (bytes.size() < kSrifHeaderSize) throw Error(ErrorCode::TruncatedPayload, "header is truncated");
  const std::uint32_t width = get_u32(bytes, 4);
  const std::uint32_t height = get_u32(bytes, 8);
  const std::uint32_t count = get_u32(bytes, 12);
  std::uint64_t fps_bits = 0;
  for (int i = 0; i < 8; ++i) fps_bits |= static_cast<std::uint64_t>(bytes[16 + i]) << (8 * i);
  const double fps = std::bit_cast<double>(fps_bits);

  if (!(fps > 0.0) || !std::isfinite(fps)) throw Error(ErrorCode::MalformedHeader, "frame rate must be positive");
  if (count == 0) throw Error(ErrorCode::ZeroFrames, "container declares zero frames");
  if (width == 0 || height == 0 || width > (1u << 16) || height > (1u << 16)) {
    throw Error(ErrorCode::MalformedHeader, "implausible frame dimensions");
  }
  const std::size_t plane = static_cast<std::size_t>(width) * height;
  const std::size_t available = bytes.size() - kSrifHeaderSize;
  if (available / plane < count) {
    throw Error(ErrorCode::TruncatedPayload, "declared " + std::to_string(count) + " frames, payload holds " +
                                                 std::to_string(available / plane));
  }
  std::vector<Image> frames;
  frames.reserve(count);
  for (std::uint32_t f = 0; f < count; ++f) {
    const auto begin = bytes.begin() + kSrifHeaderSize + f * plane;
    frames.emplace_back(static_cast<int>(width), static_cast<int>(height),
                        std::vector<std::uint8_t>(begin, begin + plane));
  }
  return FrameSequence(std::move(frames), fps);
}

Bytes write_frames(const FrameSequence& seq) {
  Bytes out{'S', 'R', 'I', 'F'};
  put_u32(out, static_cast<std::uint32_t>(seq.width()));
  put_u32(out, static_cast<std::uint32_t>(seq.height()));
  put_u32(out, static_cast<std::uint32_t>(seq.frame_count()));
  const auto fps_bits = std::bit_cast<std::uint64_t>(seq.frame_rate_fps());
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(fps_bits >> (8 * i)));
  out.reserve(out.size() + seq.frame_count() * static_cast<std::size_t>(seq.width()) * seq.height());
  for (const Image& f : seq.frames()) out.insert(out.end(), f.samples().begin(), f.samples().end());
  return out;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace srinterp
