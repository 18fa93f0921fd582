// Parallel kernels against their serial reference versions.
// Run with OMP_NUM_THREADS=<n> to vary the parallel side.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "srinterp/filters.hpp"
#include "srinterp/interp.hpp"
#include "srinterp/metrics.hpp"
#include "srinterp/reference.hpp"
#include "srinterp/rounding.hpp"
#include "srinterp/scanconv.hpp"

namespace {

using namespace srinterp;

const Image& input() {
  static const Image img = load_pgm(std::filesystem::path(SRINTERP_DATA_DIR) / "natural" / "input" / "camera.pgm");
  return img;
}

const Image& reference_image() {
  static const Image img = load_pgm(std::filesystem::path(SRINTERP_DATA_DIR) / "natural" / "ref" / "camera.pgm");
  return img;
}

void BM_NniDr_Parallel(benchmark::State& state) {
  const int ratio = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nni_upscale(input(), ratio, RoundingStrategy::Ceil, nullptr));
}

void BM_NniDr_Serial(benchmark::State& state) {
  const int ratio = static_cast<int>(state.range(0));
  const auto rows = reference::ceil_map(input().height(), ratio);
  const auto cols = reference::ceil_map(input().width(), ratio);
  for (auto _ : state) benchmark::DoNotOptimize(reference::nni_upscale(input(), ratio, rows, cols));
}

void BM_NniSr_Parallel(benchmark::State& state) {
  const int ratio = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto stream = DrawStream::from_seed(1);
    benchmark::DoNotOptimize(nni_upscale(input(), ratio, RoundingStrategy::SrEq3, &stream));
  }
}

void BM_Bilinear_Parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bilinear_upscale(input(), 4));
}

void BM_Bilinear_Serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::bilinear_upscale(input(), 4));
}

void BM_Bicubic_Parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bicubic_upscale(input(), 4));
}

void BM_Bicubic_Serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::bicubic_upscale(input(), 4));
}

void BM_GaussianSmooth_Parallel(benchmark::State& state) {
  FilterSettings s;
  for (auto _ : state) benchmark::DoNotOptimize(gaussian_smooth(reference_image(), s));
}

void BM_GaussianSmooth_Serial(benchmark::State& state) {
  FilterSettings s;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::gaussian_smooth(reference_image(), s.gaussian_sigma,
                                                        s.effective_gaussian_radius()));
  }
}

void BM_Ssim_Parallel(benchmark::State& state) {
  const Image up = nni_upscale(input(), 4, RoundingStrategy::Ceil, nullptr);
  for (auto _ : state) benchmark::DoNotOptimize(ssim(reference_image(), up));
}

void BM_Ssim_Serial(benchmark::State& state) {
  const Image up = nni_upscale(input(), 4, RoundingStrategy::Ceil, nullptr);
  for (auto _ : state) benchmark::DoNotOptimize(reference::ssim(reference_image(), up));
}

void BM_ScanConvert_Parallel(benchmark::State& state) {
  const SectorGeometry g;
  const PolarLookup lut = build_lookup(g);
  const Image frame = make_phantom(g, 1, 30.0, 1).frame(0);
  for (auto _ : state) benchmark::DoNotOptimize(scan_convert(frame, g, lut, Method::Bilinear, nullptr));
}

void BM_ScanConvert_Serial(benchmark::State& state) {
  const SectorGeometry g;
  const Image frame = make_phantom(g, 1, 30.0, 1).frame(0);
  for (auto _ : state) benchmark::DoNotOptimize(reference::scan_convert(frame, g, Method::Bilinear));
}

void BM_Piqe(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(piqe(reference_image()));
}

// Per-subscript rounding cost for a 512-sample axis at 4X.
void BM_RoundAxis(benchmark::State& state) {
  const auto strategy = static_cast<RoundingStrategy>(state.range(0));
  std::vector<Subscript> xs;
  for (int i = 1; i <= 512; ++i) xs.emplace_back(i / 4.0);
  auto stream = DrawStream::from_seed(1);
  for (auto _ : state) benchmark::DoNotOptimize(round_subscript_vector(xs, strategy, &stream));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
  state.SetLabel(std::string(to_string(strategy)));
}

}  // namespace

BENCHMARK(BM_NniDr_Parallel)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_NniDr_Serial)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_NniSr_Parallel)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Bilinear_Parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Bilinear_Serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Bicubic_Parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Bicubic_Serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GaussianSmooth_Parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GaussianSmooth_Serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Ssim_Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ssim_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanConvert_Parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ScanConvert_Serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Piqe)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RoundAxis)
    ->Arg(static_cast<int>(RoundingStrategy::Ceil))
    ->Arg(static_cast<int>(RoundingStrategy::SrEq3))
    ->Arg(static_cast<int>(RoundingStrategy::SrMode2));

BENCHMARK_MAIN();
