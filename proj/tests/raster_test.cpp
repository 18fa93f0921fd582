#include <gtest/gtest.h>

#include <cstring>
#include <string>

#include "srinterp/error.hpp"
#include "srinterp/raster.hpp"
#include "test_support.hpp"

using namespace srinterp;

namespace {

Bytes bytes_of(const std::string& s) { return Bytes(s.begin(), s.end()); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Internal;
}

void put_u32(Bytes& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

// Hand-built container bytes, independent of write_frames.
Bytes srif(std::uint32_t w, std::uint32_t h, std::uint32_t n, double fps, std::size_t payload) {
  Bytes b = bytes_of("SRIF");
  put_u32(b, w);
  put_u32(b, h);
  put_u32(b, n);
  std::uint64_t bits;
  std::memcpy(&bits, &fps, 8);
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  for (std::size_t i = 0; i < payload; ++i) b.push_back(static_cast<std::uint8_t>(i * 7));
  return b;
}

}  // namespace

TEST(Image, RejectsBadShape) {
  EXPECT_THROW(Image(0, 3, std::uint8_t{0}), Error);
  EXPECT_THROW(Image(2, 2, std::vector<std::uint8_t>(3)), Error);
}

TEST(Pgm, ParsesHeaderWithComments) {
  Bytes b = bytes_of("P5\n# made by hand\n3 2\n# another\n255\n");
  for (std::uint8_t v : {1, 2, 3, 4, 5, 6}) b.push_back(v);
  const Image img = read_pgm(b);
  EXPECT_EQ(img.width(), 3);
  EXPECT_EQ(img.height(), 2);
  EXPECT_EQ(img.at(0, 1), 4);
  EXPECT_EQ(img.at(2, 1), 6);
}

TEST(Pgm, WritesCanonicalHeader) {
  const Image img(2, 1, std::vector<std::uint8_t>{9, 10});
  const Bytes out = write_pgm(img);
  EXPECT_EQ(out, ([] {
              Bytes b = bytes_of("P5\n2 1\n255\n");
              b.push_back(9);
              b.push_back(10);
              return b;
            })());
}

TEST(Pgm, RoundTripsRandomImages) {
  for (std::uint32_t seed = 1; seed <= 25; ++seed) {
    const int w = 1 + static_cast<int>(seed * 7 % 37);
    const int h = 1 + static_cast<int>(seed * 13 % 29);
    const Image img = testing_support::random_image(w, h, seed);
    ASSERT_EQ(read_pgm(write_pgm(img)), img);
  }
}

TEST(Pgm, Errors) {
  EXPECT_EQ(code_of([] { read_pgm(bytes_of("P2\n2 2\n255\n1 2 3 4\n")); }), ErrorCode::MalformedHeader);
  EXPECT_EQ(code_of([] { read_pgm(bytes_of("P5\n2 2\n65535\n")); }), ErrorCode::UnsupportedMaxval);
  EXPECT_EQ(code_of([] { read_pgm(bytes_of("P5\n2 2\n255\nabc")); }), ErrorCode::TruncatedPayload);
  EXPECT_EQ(code_of([] { read_pgm(bytes_of("P5\n2")); }), ErrorCode::MalformedHeader);
  EXPECT_EQ(code_of([] { read_pgm(bytes_of("P5\n0 2\n255\n")); }), ErrorCode::MalformedHeader);
}

TEST(Srif, ReadsHandBuiltContainer) {
  const Bytes b = srif(3, 2, 2, 30.0, 12);
  ASSERT_EQ(b.size(), kSrifHeaderSize + 12);
  const FrameSequence seq = read_frames(b);
  EXPECT_EQ(seq.frame_count(), 2u);
  EXPECT_EQ(seq.width(), 3);
  EXPECT_EQ(seq.height(), 2);
  EXPECT_DOUBLE_EQ(seq.frame_rate_fps(), 30.0);
  EXPECT_EQ(seq.frame(1).at(0, 0), static_cast<std::uint8_t>(6 * 7));
  EXPECT_EQ(write_frames(seq), b);
}

TEST(Srif, RoundTrip) {
  std::vector<Image> frames;
  for (std::uint32_t s = 0; s < 5; ++s) frames.push_back(testing_support::random_image(17, 9, s + 100));
  const FrameSequence seq(std::move(frames), 29.97);
  const FrameSequence back = read_frames(write_frames(seq));
  EXPECT_EQ(back, seq);
  EXPECT_NEAR(back.duration_ms(), 5 / 29.97 * 1000.0, 1e-9);
}

TEST(Srif, Errors) {
  EXPECT_EQ(code_of([] { read_frames(bytes_of("RIFFxxxxxxxxxxxxxxxxxxxxxxxx")); }), ErrorCode::BadMagic);
  EXPECT_EQ(code_of([] { read_frames(srif(2, 2, 0, 30.0, 0)); }), ErrorCode::ZeroFrames);
  EXPECT_EQ(code_of([] { read_frames(srif(2, 2, 3, 30.0, 8)); }), ErrorCode::TruncatedPayload);
  EXPECT_EQ(code_of([] { read_frames(srif(2, 2, 1, 0.0, 4)); }), ErrorCode::MalformedHeader);
  Bytes short_header = srif(2, 2, 1, 30.0, 0);
  short_header.resize(10);
  EXPECT_EQ(code_of([&] { read_frames(short_header); }), ErrorCode::TruncatedPayload);
}

TEST(Srif, RejectsMixedFrameSizes) {
  std::vector<Image> frames{Image(2, 2, std::uint8_t{0}), Image(3, 2, std::uint8_t{0})};
  EXPECT_THROW(FrameSequence(std::move(frames), 30.0), Error);
}

TEST(Histogram, CountsAndEmptyBins) {
  const Image img(4, 1, std::vector<std::uint8_t>{0, 0, 7, 255});
  const Histogram h = histogram(img);
  EXPECT_EQ(h.total, 4u);
  EXPECT_EQ(h.counts[0], 2u);
  EXPECT_EQ(h.counts[7], 1u);
  EXPECT_EQ(h.counts[255], 1u);
  EXPECT_EQ(empty_bins(h).size(), 253u);
  EXPECT_EQ(value_set(img), (std::vector<int>{0, 7, 255}));
}

TEST(Histogram, TotalsMatchPixelCount) {
  for (std::uint32_t seed = 1; seed <= 10; ++seed) {
    const Image img = testing_support::random_image(31, 17, seed);
    const Histogram h = histogram(img);
    std::uint64_t sum = 0;
    for (auto c : h.counts) sum += c;
    ASSERT_EQ(sum, img.size());
    ASSERT_EQ(h.total, img.size());
    ASSERT_EQ(empty_bins(h).size() + value_set(img).size(), 256u);
  }
}

TEST(Files, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { read_file("/nonexistent/dir/x.pgm"); }), ErrorCode::Io);
}
