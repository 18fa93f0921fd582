#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <json.hpp>

#include "srinterp/error.hpp"
#include "srinterp/harness.hpp"
#include "test_support.hpp"

using namespace srinterp;
namespace fs = std::filesystem;
namespace ts = testing_support;

namespace {

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = fs::temp_directory_path() / ("srinterp_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path_);
    fs::create_directories(path_ / "input");
    fs::create_directories(path_ / "ref");
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// Six synthetic pairs: the reference is a smooth 96x96 field and the input
// its 4x box-downsampled version.
void write_pairs(const fs::path& root, int count) {
  for (int k = 0; k < count; ++k) {
    const Image ref = ts::smooth_image(96, 96, static_cast<std::uint32_t>(k + 1));
    std::vector<std::uint8_t> px;
    for (int y = 0; y < 24; ++y)
      for (int x = 0; x < 24; ++x) {
        int sum = 0;
        for (int dy = 0; dy < 4; ++dy)
          for (int dx = 0; dx < 4; ++dx) sum += ref.at(4 * x + dx, 4 * y + dy);
        px.push_back(static_cast<std::uint8_t>((sum + 8) / 16));
      }
    const std::string name = "img" + std::to_string(k) + ".pgm";
    save_pgm(root / "ref" / name, ref);
    save_pgm(root / "input" / name, Image(24, 24, px));
  }
}

BenchConfig config_for(const fs::path& root) {
  BenchConfig c;
  c.input_dir = root / "input";
  c.ref_dir = root / "ref";
  return c;
}

}  // namespace

TEST(RoundingTable, PublishedTwoXColumnsAndCsv) {
  auto stream = DrawStream::from_file(ts::data_dir() / "table1" / "r_2x.txt");
  const RoundingTable t = rounding_table(2, 6, stream);
  ASSERT_EQ(t.rows.size(), 6u);
  const std::vector<long> dr{1, 1, 2, 2, 3, 3}, sr{1, 1, 1, 2, 2, 3};
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(t.rows[i].dr, dr[i]);
    EXPECT_EQ(t.rows[i].sr, sr[i]);
  }
  const std::string csv = rounding_table_csv(t, false);
  EXPECT_EQ(csv,
            "ratio,x,r,dr,sr\n2X,0.5000,0.4,1,1\n2X,1.0000,0.5,1,1\n2X,1.5000,0.5,2,1\n"
            "2X,2.0000,0.1,2,2\n2X,2.5000,0.5,3,2\n2X,3.0000,0.3,3,3\n");
  EXPECT_NE(rounding_table_csv(t, true).find("# dr_seconds="), std::string::npos);
}

TEST(LoadPairs, MatchesByFileName) {
  TempDir dir("pairs");
  write_pairs(dir.path(), 3);
  const auto pairs = load_pairs(config_for(dir.path()));
  ASSERT_EQ(pairs.size(), 3u);
  EXPECT_EQ(pairs[0].id, "img0");
  EXPECT_EQ(pairs[2].reference.width(), 96);
}

TEST(LoadPairs, Errors) {
  TempDir dir("pair_errors");
  write_pairs(dir.path(), 2);
  fs::remove(dir.path() / "ref" / "img1.pgm");
  try {
    load_pairs(config_for(dir.path()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PairingError);
  }
  auto c = config_for(dir.path());
  c.ratio = 3;
  fs::remove(dir.path() / "input" / "img1.pgm");
  EXPECT_THROW(load_pairs(c), Error);
}

TEST(Bench, GridShapeOrderAndDeterminism) {
  TempDir dir("grid");
  write_pairs(dir.path(), 6);
  auto c = config_for(dir.path());
  c.seeds = {5};
  const auto pairs = load_pairs(c);
  const QualityReport a = run_bench(c, pairs);
  ASSERT_EQ(a.rows.size(), 24u);
  EXPECT_EQ(a.rows[0].image_id, "img0");
  EXPECT_EQ(a.rows[0].method, Method::NniDr);
  EXPECT_FALSE(a.rows[0].filtered);
  EXPECT_TRUE(a.rows[1].filtered);
  EXPECT_EQ(a.rows[2].method, Method::NniSrEq3);
  EXPECT_EQ(a.rows[4].image_id, "img1");
  for (const auto& row : a.rows) {
    ASSERT_TRUE(row.empty_bins_preserved.has_value());
    EXPECT_TRUE(*row.empty_bins_preserved);
  }
  ASSERT_EQ(a.summary.size(), 4u);
  EXPECT_EQ(a.summary[0].rows, 6u);

  const QualityReport b = run_bench(c, pairs);
  EXPECT_EQ(report_csv(a), report_csv(b));
  EXPECT_EQ(summary_csv(a), summary_csv(b));
  EXPECT_EQ(report_json(a, false), report_json(b, false));
}

TEST(Bench, CellsMatchDirectEvaluation) {
  TempDir dir("cells");
  write_pairs(dir.path(), 2);
  auto c = config_for(dir.path());
  c.seeds = {1, 2};
  c.methods = {Method::NniSrEq3, Method::Bicubic};
  const auto pairs = load_pairs(c);
  const QualityReport report = run_bench(c, pairs);
  ASSERT_EQ(report.rows.size(), 16u);
  for (const auto& row : report.rows) {
    const auto& pair = row.image_id == "img0" ? pairs[0] : pairs[1];
    DrawStream stream = DrawStream::from_seed(row.seed);
    Image up = upscale(pair.input, 4, row.method, &stream);
    if (row.filtered) up = smooth_then_sharpen(up, c.filter);
    const FrMetrics m = full_reference(pair.reference, up);
    EXPECT_DOUBLE_EQ(row.metrics.mse, m.mse);
    EXPECT_DOUBLE_EQ(row.metrics.ssim, m.ssim);
    EXPECT_EQ(row.empty_bins_preserved.has_value(), row.method != Method::Bicubic);
  }
}

TEST(Bench, TestEqualsReferenceGivesPerfectScores) {
  TempDir dir("perfect");
  // Reference built as the ceil upscale of the input: NNI-DR reproduces it.
  for (int k = 0; k < 2; ++k) {
    const Image in = ts::random_image(20, 20, static_cast<std::uint32_t>(k + 3));
    const std::string name = "p" + std::to_string(k) + ".pgm";
    save_pgm(dir.path() / "input" / name, in);
    save_pgm(dir.path() / "ref" / name, nni_upscale(in, 4, RoundingStrategy::Ceil, nullptr));
  }
  auto c = config_for(dir.path());
  c.seeds = {1};
  c.methods = {Method::NniDr};
  c.apply_filters = FilterPhase::BeforeOnly;
  const QualityReport report = run_bench(c, load_pairs(c));
  ASSERT_EQ(report.rows.size(), 2u);
  for (const auto& row : report.rows) {
    EXPECT_EQ(row.metrics.mse, 0.0);
    EXPECT_DOUBLE_EQ(row.metrics.ssim, 1.0);
    EXPECT_TRUE(std::isinf(row.metrics.psnr));
  }
  const auto json = nlohmann::json::parse(report_json(report, false));
  EXPECT_TRUE(json["rows"][0]["psnr"].is_null());
  EXPECT_TRUE(json["rows"][0]["identical"].get<bool>());
  EXPECT_NE(report_csv(report).find(",0.000000,,1.000000,1,pass"), std::string::npos);
}

TEST(Bench, SeedDeltas) {
  TempDir dir("deltas");
  write_pairs(dir.path(), 2);
  auto c = config_for(dir.path());
  c.seeds = {1, 2, 3};
  c.apply_filters = FilterPhase::AfterOnly;
  const QualityReport report = run_bench(c, load_pairs(c));
  const auto deltas = seed_deltas(report, Method::NniSrEq3, Method::NniDr, true);
  ASSERT_EQ(deltas.size(), 3u);
  for (const auto& d : deltas) {
    double sr = 0, dr = 0;
    for (const auto& row : report.rows) {
      if (row.seed != d.seed) continue;
      (row.method == Method::NniSrEq3 ? sr : dr) += row.metrics.ssim / 2;
    }
    EXPECT_NEAR(d.ssim_delta, sr - dr, 1e-12);
  }
  EXPECT_TRUE(seed_deltas(report, Method::NniSrEq3, Method::NniDr, false).empty());
}

TEST(FilterPhase, Names) {
  EXPECT_EQ(parse_filter_phase("both"), FilterPhase::Both);
  EXPECT_EQ(to_string(FilterPhase::AfterOnly), "after-only");
  EXPECT_THROW(parse_filter_phase("during"), Error);
}
