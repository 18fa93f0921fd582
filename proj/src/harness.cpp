#include "srinterp/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "srinterp/error.hpp"

namespace srinterp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_metric(double v) {
  if (std::isinf(v)) return "";
  return fmt::format("{:.6f}", v);
}

}  // namespace

RoundingTable rounding_table(int ratio, int row_count, DrawStream& stream) {
  if (row_count < 1 || ratio < 1) throw Error(ErrorCode::InvalidArgument, "row count and ratio must be >= 1");
  RoundingTable table;
  table.ratio = ratio;
  const int n = row_count;
  std::vector<Subscript> xs;
  xs.reserve(n);
  for (int i = 1; i <= n; ++i) xs.emplace_back(static_cast<double>(i) / ratio);

  auto start = Clock::now();
  const auto dr_out = round_subscript_vector(xs, RoundingStrategy::Ceil, nullptr);
  table.dr_seconds = seconds_since(start);

  start = Clock::now();
  const auto sr_out = round_subscript_vector(xs, RoundingStrategy::SrEq3, &stream);
  table.sr_seconds = seconds_since(start);

  for (int i = 0; i < n; ++i) {
    table.rows.push_back({xs[i].value(), *sr_out[i].r_used, dr_out[i].index, sr_out[i].index});
  }
  return table;
}

std::string rounding_table_csv(const RoundingTable& table, bool with_timing) {
  std::string out = "ratio,x,r,dr,sr\n";
  for (const auto& row : table.rows) {
    out += fmt::format("{}X,{:.4f},{:.1f},{},{}\n", table.ratio, row.x, row.r.value(), row.dr, row.sr);
  }
  if (with_timing) {
    out += fmt::format("# dr_seconds={:.3e} sr_seconds={:.3e}\n", table.dr_seconds, table.sr_seconds);
  }
  return out;
}

std::string_view to_string(FilterPhase phase) {
  switch (phase) {
    case FilterPhase::BeforeOnly: return "before-only";
    case FilterPhase::AfterOnly: return "after-only";
    case FilterPhase::Both: return "both";
  }
  return "?";
}

FilterPhase parse_filter_phase(std::string_view name) {
  if (name == "before-only") return FilterPhase::BeforeOnly;
  if (name == "after-only") return FilterPhase::AfterOnly;
  if (name == "both") return FilterPhase::Both;
  throw Error(ErrorCode::InvalidArgument, "unknown filter phase '" + std::string(name) + "'");
}

std::vector<std::uint32_t> BenchConfig::default_seeds() {
  std::vector<std::uint32_t> seeds(20);
  for (std::uint32_t i = 0; i < seeds.size(); ++i) seeds[i] = i + 1;
  return seeds;
}

std::vector<ImagePair> load_pairs(const BenchConfig& config) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(config.input_dir) || !fs::is_directory(config.ref_dir)) {
    throw Error(ErrorCode::PairingError, "input and reference directories must exist");
  }
  std::vector<fs::path> inputs;
  for (const auto& entry : fs::directory_iterator(config.input_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") inputs.push_back(entry.path());
  }
  std::sort(inputs.begin(), inputs.end());
  if (inputs.empty()) throw Error(ErrorCode::PairingError, "no .pgm inputs in " + config.input_dir.string());

  std::vector<ImagePair> pairs;
  for (const auto& in_path : inputs) {
    const fs::path ref_path = config.ref_dir / in_path.filename();
    if (!fs::exists(ref_path)) {
      throw Error(ErrorCode::PairingError, "no reference for " + in_path.filename().string());
    }
    Image input = load_pgm(in_path);
    Image reference = load_pgm(ref_path);
    if (scaled_length(input.width(), config.ratio) != reference.width() ||
        scaled_length(input.height(), config.ratio) != reference.height()) {
      throw Error(ErrorCode::PairingError, in_path.filename().string() + ": input size times ratio " +
                                               fmt::format("{}", config.ratio) + " does not give the reference size");
    }
    pairs.push_back({in_path.stem().string(), std::move(input), std::move(reference)});
  }
  return pairs;
}

BenchRow evaluate_cell(const ImagePair& pair, Method method, std::uint32_t seed, double ratio,
                       const FilterSettings& filter, bool filtered) {
  DrawStream stream = DrawStream::from_seed(seed);
  const Image upscaled = upscale(pair.input, ratio, method, &stream);
  BenchRow row{pair.id, method, seed, filtered, {}, {}};
  if (is_nni(method)) {
    row.empty_bins_preserved = empty_bins(histogram(pair.input)) == empty_bins(histogram(upscaled));
  }
  row.metrics = full_reference(pair.reference, filtered ? smooth_then_sharpen(upscaled, filter) : upscaled);
  return row;
}

QualityReport run_bench(const BenchConfig& config, const std::vector<ImagePair>& pairs) {
  config.filter.validate();
  if (config.seeds.empty() || config.methods.empty()) {
    throw Error(ErrorCode::InvalidArgument, "bench needs at least one seed and one method");
  }
  const auto start = Clock::now();
  std::vector<bool> phases;
  if (config.apply_filters != FilterPhase::AfterOnly) phases.push_back(false);
  if (config.apply_filters != FilterPhase::BeforeOnly) phases.push_back(true);

  const std::size_t per_image = config.methods.size() * config.seeds.size();
  const long cells = static_cast<long>(pairs.size() * per_image);
  std::vector<BenchRow> rows(cells * phases.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (long c = 0; c < cells; ++c) {
    try {
      const ImagePair& pair = pairs[c / per_image];
      const Method method = config.methods[(c % per_image) / config.seeds.size()];
      const std::uint32_t seed = config.seeds[c % config.seeds.size()];
      for (std::size_t p = 0; p < phases.size(); ++p) {
        rows[c * phases.size() + p] = evaluate_cell(pair, method, seed, config.ratio, config.filter, phases[p]);
      }
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  QualityReport report;
  report.rows = std::move(rows);
  report.seeds = config.seeds;
  report.filter = config.filter;
  report.ratio = config.ratio;
  for (const bool filtered : phases) {
    for (const Method method : config.methods) {
      MethodSummary s{method, filtered, 0, 0.0, 0.0, 0.0};
      std::size_t finite_psnr = 0;
      for (const auto& row : report.rows) {
        if (row.method != method || row.filtered != filtered) continue;
        ++s.rows;
        s.mean_mse += row.metrics.mse;
        s.mean_ssim += row.metrics.ssim;
        if (std::isfinite(row.metrics.psnr)) {
          s.mean_psnr += row.metrics.psnr;
          ++finite_psnr;
        }
      }
      if (s.rows > 0) {
        s.mean_mse /= s.rows;
        s.mean_ssim /= s.rows;
      }
      s.mean_psnr = finite_psnr > 0 ? s.mean_psnr / finite_psnr : std::numeric_limits<double>::infinity();
      report.summary.push_back(s);
    }
  }
  report.elapsed_seconds = seconds_since(start);
  return report;
}

std::string report_csv(const QualityReport& report) {
  std::string out = "image_id,method,seed,filtered,mse,psnr,ssim,identical,empty_bins_preserved\n";
  for (const auto& row : report.rows) {
    const std::string bins = row.empty_bins_preserved ? (*row.empty_bins_preserved ? "pass" : "fail") : "n/a";
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", row.image_id, to_string(row.method), row.seed,
                       row.filtered ? 1 : 0, format_metric(row.metrics.mse), format_metric(row.metrics.psnr),
                       format_metric(row.metrics.ssim), std::isinf(row.metrics.psnr) ? 1 : 0, bins);
  }
  return out;
}

std::string summary_csv(const QualityReport& report) {
  std::string out = "method,filtered,rows,mean_mse,mean_psnr,mean_ssim\n";
  for (const auto& s : report.summary) {
    out += fmt::format("{},{},{},{},{},{}\n", to_string(s.method), s.filtered ? 1 : 0, s.rows,
                       format_metric(s.mean_mse), format_metric(s.mean_psnr), format_metric(s.mean_ssim));
  }
  // Pairwise deltas of every stochastic NNI method against the ceil baseline.
  for (const auto& sr : report.summary) {
    if (!is_stochastic(sr.method)) continue;
    for (const auto& dr : report.summary) {
      if (dr.method != Method::NniDr || dr.filtered != sr.filtered) continue;
      out += fmt::format("delta({}-{}),{},{},{},{},{}\n", to_string(sr.method), to_string(dr.method),
                         sr.filtered ? 1 : 0, sr.rows, format_metric(sr.mean_mse - dr.mean_mse),
                         format_metric(sr.mean_psnr - dr.mean_psnr), format_metric(sr.mean_ssim - dr.mean_ssim));
    }
  }
  return out;
}

std::string report_json(const QualityReport& report, bool include_timing) {
  using nlohmann::ordered_json;
  auto metric = [](double v) { return std::isinf(v) ? ordered_json(nullptr) : ordered_json(v); };
  ordered_json j;
  j["tool_version"] = kToolVersion;
  j["ratio"] = report.ratio;
  j["seeds"] = report.seeds;
  j["filter_settings"] = {{"gaussian_sigma", report.filter.gaussian_sigma},
                          {"gaussian_kernel_radius", report.filter.effective_gaussian_radius()},
                          {"unsharp_radius", report.filter.unsharp_radius},
                          {"unsharp_amount", report.filter.unsharp_amount},
                          {"unsharp_threshold", report.filter.unsharp_threshold}};
  if (include_timing) j["elapsed_seconds"] = report.elapsed_seconds;
  j["rows"] = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r;
    r["image_id"] = row.image_id;
    r["method"] = std::string(to_string(row.method));
    r["seed"] = row.seed;
    r["filtered"] = row.filtered;
    r["mse"] = row.metrics.mse;
    r["psnr"] = metric(row.metrics.psnr);
    r["identical"] = std::isinf(row.metrics.psnr);
    r["ssim"] = row.metrics.ssim;
    r["empty_bins_preserved"] = row.empty_bins_preserved ? ordered_json(*row.empty_bins_preserved) : nullptr;
    j["rows"].push_back(std::move(r));
  }
  j["summary"] = ordered_json::array();
  for (const auto& s : report.summary) {
    j["summary"].push_back({{"method", std::string(to_string(s.method))},
                            {"filtered", s.filtered},
                            {"rows", s.rows},
                            {"mean_mse", s.mean_mse},
                            {"mean_psnr", metric(s.mean_psnr)},
                            {"mean_ssim", s.mean_ssim}});
  }
  return j.dump(2) + "\n";
}

std::vector<SeedDelta> seed_deltas(const QualityReport& report, Method sr, Method dr, bool filtered) {
  struct Sums {
    double ssim = 0.0, mse = 0.0;
    std::size_t n = 0;
  };
  std::map<std::uint32_t, Sums> sr_sums, dr_sums;
  for (const auto& row : report.rows) {
    if (row.filtered != filtered) continue;
    auto* target = row.method == sr ? &sr_sums : row.method == dr ? &dr_sums : nullptr;
    if (target == nullptr) continue;
    Sums& s = (*target)[row.seed];
    s.ssim += row.metrics.ssim;
    s.mse += row.metrics.mse;
    ++s.n;
  }
  std::vector<SeedDelta> out;
  for (const std::uint32_t seed : report.seeds) {
    const auto a = sr_sums.find(seed);
    const auto b = dr_sums.find(seed);
    if (a == sr_sums.end() || b == dr_sums.end() || a->second.n == 0 || b->second.n == 0) continue;
    out.push_back({seed, a->second.ssim / a->second.n - b->second.ssim / b->second.n,
                   a->second.mse / a->second.n - b->second.mse / b->second.n});
  }
  return out;
}

}  // namespace srinterp
