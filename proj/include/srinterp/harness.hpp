#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "srinterp/filters.hpp"
#include "srinterp/interp.hpp"
#include "srinterp/metrics.hpp"
#include "srinterp/rng.hpp"

namespace srinterp {

inline constexpr const char* kToolVersion = "1.0.0";

// --- Rounding table --------------------------------------------------------

struct RoundingTableRow {
  double x = 0.0;
  QuantizedDraw r;
  long dr = 0;
  long sr = 0;
};

struct RoundingTable {
  int ratio = 0;
  std::vector<RoundingTableRow> rows;
  double dr_seconds = 0.0;  // measured, informational only
  double sr_seconds = 0.0;
};

/// Subscripts i / ratio for i = 1 .. row_count, each rounded with the ceil
/// rule and with the quantized-r stochastic rule (one draw per row).
/// Upscaling an n-sample axis gives row_count = n * ratio.
RoundingTable rounding_table(int ratio, int row_count, DrawStream& stream);

std::string rounding_table_csv(const RoundingTable& table, bool with_timing);

// --- Benchmark ------------------------------------------------------------

enum class FilterPhase { BeforeOnly, AfterOnly, Both };

std::string_view to_string(FilterPhase phase);
FilterPhase parse_filter_phase(std::string_view name);

struct BenchConfig {
  std::filesystem::path input_dir;
  std::filesystem::path ref_dir;
  std::vector<Method> methods{Method::NniDr, Method::NniSrEq3};
  double ratio = 4.0;
  std::vector<std::uint32_t> seeds = default_seeds();
  FilterSettings filter;
  FilterPhase apply_filters = FilterPhase::Both;

  static std::vector<std::uint32_t> default_seeds();  // 1..20
};

struct ImagePair {
  std::string id;
  Image input;
  Image reference;
};

/// Pairs every *.pgm in input_dir with the same file name in ref_dir.
/// Throws PairingError on an unmatched stem or a size that does not scale
/// by `ratio`.
std::vector<ImagePair> load_pairs(const BenchConfig& config);

struct BenchRow {
  std::string image_id;
  Method method = Method::NniDr;
  std::uint32_t seed = 0;
  bool filtered = false;
  FrMetrics metrics;
  std::optional<bool> empty_bins_preserved;  // NNI methods only
};

struct MethodSummary {
  Method method = Method::NniDr;
  bool filtered = false;
  std::size_t rows = 0;
  double mean_mse = 0.0;
  double mean_psnr = 0.0;  // over finite values
  double mean_ssim = 0.0;
};

struct QualityReport {
  std::vector<BenchRow> rows;
  std::vector<MethodSummary> summary;
  std::vector<std::uint32_t> seeds;
  FilterSettings filter;
  double ratio = 4.0;
  double elapsed_seconds = 0.0;
};

/// Upscales one input with `method` (stream seeded with `seed`), optionally
/// smooths and sharpens, then scores against the reference.
BenchRow evaluate_cell(const ImagePair& pair, Method method, std::uint32_t seed, double ratio,
                       const FilterSettings& filter, bool filtered);

/// Full grid image x method x seed x filter phase. Cells run in parallel;
/// rows come back sorted by (image, method order, seed order, filtered).
QualityReport run_bench(const BenchConfig& config, const std::vector<ImagePair>& pairs);

std::string report_csv(const QualityReport& report);
std::string summary_csv(const QualityReport& report);
std::string report_json(const QualityReport& report, bool include_timing);

struct SeedDelta {
  std::uint32_t seed = 0;
  double ssim_delta = 0.0;  // mean SSIM(sr) - mean SSIM(dr) over images
  double mse_delta = 0.0;   // mean MSE(sr) - mean MSE(dr) over images
};

/// Per-seed mean deltas of `sr` relative to `dr` for one filter phase.
std::vector<SeedDelta> seed_deltas(const QualityReport& report, Method sr, Method dr, bool filtered);

}  // namespace srinterp
