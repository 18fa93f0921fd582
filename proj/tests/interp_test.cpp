#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "srinterp/error.hpp"
#include "srinterp/interp.hpp"
#include "srinterp/reference.hpp"
#include "test_support.hpp"

using namespace srinterp;

namespace {

std::vector<int> tenths_from_seed(std::uint32_t seed, std::size_t count) {
  auto stream = DrawStream::from_seed(seed);
  std::vector<int> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(stream.next_r().tenths());
  return out;
}

// Direct 1-D Keys convolution for a single output sample, clamp-to-edge.
double keys_1d(const std::vector<double>& src, double pos) {
  auto w = [](double t) {
    t = std::abs(t);
    if (t <= 1) return 1.5 * t * t * t - 2.5 * t * t + 1;
    if (t < 2) return -0.5 * t * t * t + 2.5 * t * t - 4 * t + 2;
    return 0.0;
  };
  double acc = 0;
  const int n = static_cast<int>(src.size());
  for (int k = -3; k < n + 3; ++k) {
    const int c = std::clamp(k, 0, n - 1);
    acc += src[c] * w(pos - k);
  }
  return acc;
}

}  // namespace

TEST(SubscriptMap, CeilExamples) {
  EXPECT_EQ(build_subscript_map(3, 2, RoundingStrategy::Ceil, nullptr).src_indices,
            (std::vector<int>{1, 1, 2, 2, 3, 3}));
  EXPECT_EQ(build_subscript_map(2, 3, RoundingStrategy::Ceil, nullptr).src_indices,
            (std::vector<int>{1, 1, 1, 2, 2, 2}));
  EXPECT_EQ(build_subscript_map(4, 1, RoundingStrategy::Ceil, nullptr).src_indices,
            (std::vector<int>{1, 2, 3, 4}));
}

TEST(SubscriptMap, NonIntegerRatioFloorsLength) {
  const auto m = build_subscript_map(5, 1.5, RoundingStrategy::Ceil, nullptr);
  EXPECT_EQ(m.dest_len(), 7);
  EXPECT_EQ(m.src_indices.back(), 5);
  EXPECT_EQ(scaled_length(3, 2.5), 7);
  EXPECT_EQ(scaled_length(10, 0.1 * 30), 30);
}

TEST(SubscriptMap, RejectsDownscale) {
  EXPECT_THROW(build_subscript_map(4, 0.5, RoundingStrategy::Ceil, nullptr), Error);
}

TEST(SubscriptMap, MatchesExactOracles) {
  for (int ratio : {2, 3, 4, 5}) {
    for (int n : {1, 3, 8, 33}) {
      EXPECT_EQ(build_subscript_map(n, ratio, RoundingStrategy::Ceil, nullptr).src_indices,
                reference::ceil_map(n, ratio));
      const auto t = tenths_from_seed(static_cast<std::uint32_t>(n * 10 + ratio), static_cast<std::size_t>(n * ratio));
      auto stream = DrawStream::from_seed(static_cast<std::uint32_t>(n * 10 + ratio));
      EXPECT_EQ(build_subscript_map(n, ratio, RoundingStrategy::SrEq3, &stream).src_indices,
                reference::sr_eq3_map(n, ratio, t));
    }
  }
}

TEST(Nni, TwoByTwoAtFourX) {
  const Image src(2, 2, std::vector<std::uint8_t>{1, 2, 3, 4});
  const Image out = nni_upscale(src, 4, RoundingStrategy::Ceil, nullptr);
  std::vector<std::uint8_t> expected;
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) expected.push_back(static_cast<std::uint8_t>((y < 4 ? 1 : 3) + (x < 4 ? 0 : 1)));
  EXPECT_EQ(out, Image(8, 8, expected));
}

TEST(Nni, RowsDrawBeforeColumns) {
  // 2x1 source at 2X: 2 row draws then 4 column draws.
  const Image src(2, 1, std::vector<std::uint8_t>{10, 20});
  auto stream = DrawStream::from_values({0.5, 0.5, 0.0, 0.0, 0.5, 0.0});
  const Image out = nni_upscale(src, 2, RoundingStrategy::SrEq3, &stream);
  // columns: x=0.5 (r 0) -> 1, x=1 -> 1, x=1.5 (r .5) -> 1, x=2 -> 2
  EXPECT_EQ(out, Image(4, 2, std::vector<std::uint8_t>{10, 10, 10, 20, 10, 10, 10, 20}));
  EXPECT_EQ(stream.remaining(), 0u);
}

TEST(Nni, ZeroDrawsEqualCeil) {
  const Image src = testing_support::random_image(13, 11, 4);
  auto zeros = DrawStream::from_values(std::vector<double>(13 * 3 + 11 * 3, 0.0));
  EXPECT_EQ(nni_upscale(src, 3, RoundingStrategy::SrEq3, &zeros), nni_upscale(src, 3, RoundingStrategy::Ceil, nullptr));
}

TEST(Nni, RatioOneIsIdentity) {
  const Image src = testing_support::random_image(19, 7, 2);
  for (Method m : {Method::NniDr, Method::NniSrEq3, Method::NniSrMode1, Method::NniSrMode2, Method::Bilinear,
                   Method::Bicubic}) {
    auto stream = DrawStream::from_seed(9);
    EXPECT_EQ(upscale(src, 1, m, &stream), src) << to_string(m);
  }
}

TEST(Nni, NoNewGrayLevels) {
  for (std::uint32_t seed = 1; seed <= 10; ++seed) {
    const Image src = testing_support::random_image(9, 12, seed);
    const auto allowed = value_set(src);
    for (Method m : {Method::NniDr, Method::NniSrEq3, Method::NniSrMode1, Method::NniSrMode2}) {
      auto stream = DrawStream::from_seed(seed);
      const Image out = upscale(src, 4, m, &stream);
      const auto got = value_set(out);
      ASSERT_TRUE(std::includes(allowed.begin(), allowed.end(), got.begin(), got.end())) << to_string(m);
      ASSERT_EQ(out.width(), 36);
      ASSERT_EQ(out.height(), 48);
    }
  }
}

TEST(Nni, ParallelMatchesSerialReference) {
  for (int ratio : {2, 3, 4}) {
    const Image src = testing_support::random_image(40, 31, static_cast<std::uint32_t>(ratio));
    const auto rows_t = tenths_from_seed(77, static_cast<std::size_t>(31 * ratio));
    const auto all_t = tenths_from_seed(77, static_cast<std::size_t>((31 + 40) * ratio));
    const std::vector<int> cols_t(all_t.begin() + 31 * ratio, all_t.end());
    const Image expected = reference::nni_upscale(src, ratio, reference::sr_eq3_map(31, ratio, rows_t),
                                                  reference::sr_eq3_map(40, ratio, cols_t));
    auto stream = DrawStream::from_seed(77);
    EXPECT_EQ(nni_upscale(src, ratio, RoundingStrategy::SrEq3, &stream), expected);
    EXPECT_EQ(nni_upscale(src, ratio, RoundingStrategy::Ceil, nullptr),
              reference::nni_upscale(src, ratio, reference::ceil_map(31, ratio), reference::ceil_map(40, ratio)));
  }
}

TEST(Nni, SameSeedSameOutput) {
  const Image src = testing_support::random_image(20, 20, 1);
  auto a = DrawStream::from_seed(42);
  auto b = DrawStream::from_seed(42);
  auto c = DrawStream::from_seed(43);
  const Image out_a = nni_upscale(src, 4, RoundingStrategy::SrEq3, &a);
  EXPECT_EQ(out_a, nni_upscale(src, 4, RoundingStrategy::SrEq3, &b));
  EXPECT_NE(out_a, nni_upscale(src, 4, RoundingStrategy::SrEq3, &c));
}

TEST(Interp, ConstantImageIsFixedPoint) {
  const Image src(7, 5, std::uint8_t{137});
  for (Method m : {Method::NniDr, Method::NniSrEq3, Method::Bilinear, Method::Bicubic}) {
    for (double ratio : {2.0, 3.0, 2.5}) {
      auto stream = DrawStream::from_seed(1);
      const Image out = upscale(src, ratio, m, &stream);
      ASSERT_EQ(value_set(out), std::vector<int>{137}) << to_string(m) << " " << ratio;
    }
  }
}

TEST(Bilinear, Midpoint) {
  const Image src(2, 1, std::vector<std::uint8_t>{0, 100});
  EXPECT_DOUBLE_EQ(sample_bilinear(src, 0.5, 0.0), 50.0);
  // 2X grid: positions -0.5, 0, 0.5, 1 -> 0, 0, 50, 100
  EXPECT_EQ(bilinear_upscale(src, 2), Image(4, 2, std::vector<std::uint8_t>{0, 0, 50, 100, 0, 0, 50, 100}));
}

TEST(Bilinear, MatchesSerialReference) {
  for (int ratio : {2, 3, 4}) {
    const Image src = testing_support::random_image(23, 17, static_cast<std::uint32_t>(ratio + 10));
    EXPECT_EQ(bilinear_upscale(src, ratio), reference::bilinear_upscale(src, ratio));
  }
}

TEST(Bilinear, StaysWithinNeighborRange) {
  const Image src = testing_support::random_image(16, 16, 3);
  const Image out = bilinear_upscale(src, 3);
  const auto in_vals = value_set(src);
  const auto out_vals = value_set(out);
  EXPECT_GE(out_vals.front(), in_vals.front());
  EXPECT_LE(out_vals.back(), in_vals.back());
}

TEST(Bicubic, KernelProperties) {
  EXPECT_DOUBLE_EQ(cubic_kernel(0.0), 1.0);
  EXPECT_DOUBLE_EQ(cubic_kernel(1.0), 0.0);
  EXPECT_DOUBLE_EQ(cubic_kernel(2.0), 0.0);
  EXPECT_DOUBLE_EQ(cubic_kernel(-1.5), cubic_kernel(1.5));
  for (double f = 0; f < 1; f += 0.05) {
    const double sum = cubic_kernel(f + 1) + cubic_kernel(f) + cubic_kernel(1 - f) + cubic_kernel(2 - f);
    ASSERT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Bicubic, StepOvershootMatchesDirectConvolution) {
  std::vector<double> row{20, 20, 20, 20, 200, 200, 200, 200};
  const Image src(8, 1, std::vector<std::uint8_t>(row.begin(), row.end()));
  const Image out = bicubic_upscale(src, 4);
  bool overshoot = false;
  for (int i = 0; i < out.width(); ++i) {
    const double pos = (i + 1) / 4.0 - 1.0;
    const double expect = std::clamp(std::floor(keys_1d(row, pos) + 0.5), 0.0, 255.0);
    ASSERT_EQ(out.at(i, 0), expect) << i;
    overshoot |= out.at(i, 0) > 200 || out.at(i, 0) < 20;
  }
  EXPECT_TRUE(overshoot);
}

TEST(Bicubic, MatchesSerialReference) {
  for (int ratio : {2, 3}) {
    const Image src = testing_support::random_image(21, 14, static_cast<std::uint32_t>(ratio + 20));
    EXPECT_EQ(bicubic_upscale(src, ratio), reference::bicubic_upscale(src, ratio));
  }
}

TEST(ParseMethod, Names) {
  EXPECT_EQ(parse_method("nni-sr"), Method::NniSrEq3);
  EXPECT_EQ(parse_method("bicubic"), Method::Bicubic);
  EXPECT_THROW(parse_method("lanczos"), Error);
  EXPECT_THROW(rounding_for(Method::Bilinear), Error);
}
