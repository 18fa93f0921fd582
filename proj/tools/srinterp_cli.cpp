// srinterp: command-line front end for the interpolation, filtering,
// metric, scan-conversion and benchmark operations.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "srinterp/error.hpp"
#include "srinterp/filters.hpp"
#include "srinterp/harness.hpp"
#include "srinterp/interp.hpp"
#include "srinterp/metrics.hpp"
#include "srinterp/raster.hpp"
#include "srinterp/rng.hpp"
#include "srinterp/scanconv.hpp"

namespace {

using namespace srinterp;
using nlohmann::ordered_json;

struct Globals {
  std::uint32_t seed = 1;
  bool json = false;
  bool csv = false;
  bool no_timestamp = false;
  std::string r_file;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Provenance record shared by every command. Printed to stderr for text
// output and embedded under "provenance" in JSON output.
class Provenance {
 public:
  Provenance(const Globals& g, std::string command) {
    record_["tool"] = "srinterp";
    record_["version"] = kToolVersion;
    record_["command"] = std::move(command);
    record_["seed"] = g.seed;
    if (!g.r_file.empty()) record_["r_file"] = g.r_file;
    if (!g.no_timestamp) record_["timestamp"] = utc_timestamp();
  }

  template <typename T>
  void set(const std::string& key, T&& value) {
    record_[key] = std::forward<T>(value);
  }

  const ordered_json& json() const { return record_; }

  void echo() const {
    std::string line = "# provenance";
    for (const auto& [key, value] : record_.items()) {
      line += " " + key + "=" + (value.is_string() ? value.get<std::string>() : value.dump());
    }
    std::cerr << line << "\n";
  }

 private:
  ordered_json record_;
};

void print_json(ordered_json j, const Provenance& prov) {
  j["provenance"] = prov.json();
  std::cout << j.dump(2) << "\n";
}

DrawStream make_stream(const Globals& g) {
  return g.r_file.empty() ? DrawStream::from_seed(g.seed) : DrawStream::from_file(g.r_file);
}

std::string describe_stream(const DrawStream& s) {
  return s.injected() ? "injected" : "mt19937";
}

void add_filter_options(CLI::App* cmd, FilterSettings& f) {
  cmd->add_option("--smooth-sigma", f.gaussian_sigma, "Gaussian smoothing sigma")->capture_default_str();
  cmd->add_option("--smooth-radius", f.gaussian_kernel_radius, "Gaussian kernel radius (0 = ceil(2 sigma))")
      ->capture_default_str();
  cmd->add_option("--sharpen-radius", f.unsharp_radius, "Unsharp-mask blur sigma")->capture_default_str();
  cmd->add_option("--sharpen-amount", f.unsharp_amount, "Unsharp-mask gain")->capture_default_str();
  cmd->add_option("--sharpen-threshold", f.unsharp_threshold, "Unsharp-mask dead zone in gray levels")
      ->capture_default_str();
}

ordered_json filter_json(const FilterSettings& f) {
  return {{"gaussian_sigma", f.gaussian_sigma},
          {"gaussian_kernel_radius", f.effective_gaussian_radius()},
          {"unsharp_radius", f.unsharp_radius},
          {"unsharp_amount", f.unsharp_amount},
          {"unsharp_threshold", f.unsharp_threshold}};
}

std::string format_double(double v) { return std::isinf(v) ? "" : fmt::format("{:.6f}", v); }

std::vector<std::uint32_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint32_t> seeds;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    try {
      const std::size_t dash = item.find('-');
      if (dash != std::string::npos && dash > 0) {
        const unsigned long lo = std::stoul(item.substr(0, dash));
        const unsigned long hi = std::stoul(item.substr(dash + 1));
        if (hi < lo || hi - lo > 100000) throw std::invalid_argument("range");
        for (unsigned long s = lo; s <= hi; ++s) seeds.push_back(static_cast<std::uint32_t>(s));
      } else {
        seeds.push_back(static_cast<std::uint32_t>(std::stoul(item)));
      }
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad seed list entry '" + item + "'");
    }
    pos = comma + 1;
  }
  return seeds;
}

// --- commands ------------------------------------------------------------

struct Table1Args {
  int ratio = 2;
  int rows = 0;
  int src_len = 3;
};

int run_table1(const Globals& g, const Table1Args& a) {
  DrawStream stream = make_stream(g);
  const int rows = a.rows > 0                 ? a.rows
                   : stream.injected() ? static_cast<int>(stream.remaining())
                                       : a.src_len * a.ratio;
  const RoundingTable table = rounding_table(a.ratio, rows, stream);
  Provenance prov(g, "table1");
  prov.set("ratio", a.ratio);
  prov.set("rows", rows);
  prov.set("draw_source", describe_stream(stream));
  if (g.json) {
    ordered_json j;
    j["ratio"] = a.ratio;
    j["rows"] = ordered_json::array();
    for (const auto& r : table.rows) j["rows"].push_back({{"x", r.x}, {"r", r.r.value()}, {"dr", r.dr}, {"sr", r.sr}});
    if (!g.no_timestamp) j["timing"] = {{"dr_seconds", table.dr_seconds}, {"sr_seconds", table.sr_seconds}};
    print_json(j, prov);
  } else {
    prov.echo();
    std::cout << rounding_table_csv(table, !g.no_timestamp);
  }
  return 0;
}

struct UpscaleArgs {
  std::string in, out;
  double ratio = 4.0;
  std::string method = "nni-dr";
};

int run_upscale(const Globals& g, const UpscaleArgs& a) {
  const Method method = parse_method(a.method);
  const Image src = load_pgm(a.in);
  DrawStream stream = make_stream(g);
  const Image out = upscale(src, a.ratio, method, &stream);
  save_pgm(a.out, out);
  Provenance prov(g, "upscale");
  prov.set("method", std::string(to_string(method)));
  prov.set("ratio", a.ratio);
  prov.set("input", a.in);
  prov.set("output", a.out);
  prov.set("draw_source", describe_stream(stream));
  prov.set("draws", stream.draws_emitted());
  prov.set("size", fmt::format("{}x{}", out.width(), out.height()));
  if (g.json) {
    print_json({{"output", a.out}, {"width", out.width()}, {"height", out.height()}}, prov);
  } else {
    prov.echo();
  }
  return 0;
}

struct FilterArgs {
  std::string in, out;
  std::string stage = "both";
  FilterSettings settings;
};

int run_filter(const Globals& g, const FilterArgs& a) {
  const Image src = load_pgm(a.in);
  Image out = a.stage == "smooth"    ? gaussian_smooth(src, a.settings)
              : a.stage == "sharpen" ? unsharp_mask(src, a.settings)
                                     : smooth_then_sharpen(src, a.settings);
  save_pgm(a.out, out);
  Provenance prov(g, "filter");
  prov.set("stage", a.stage);
  prov.set("input", a.in);
  prov.set("output", a.out);
  prov.set("filter_settings", filter_json(a.settings));
  if (g.json) {
    print_json({{"output", a.out}}, prov);
  } else {
    prov.echo();
  }
  return 0;
}

struct MetricsArgs {
  std::string ref, test;
};

int run_metrics(const Globals& g, const MetricsArgs& a) {
  const FrMetrics m = full_reference(load_pgm(a.ref), load_pgm(a.test));
  Provenance prov(g, "metrics");
  prov.set("reference", a.ref);
  prov.set("test", a.test);
  const bool identical = std::isinf(m.psnr);
  if (g.json) {
    print_json({{"mse", m.mse},
                {"psnr", identical ? ordered_json(nullptr) : ordered_json(m.psnr)},
                {"ssim", m.ssim},
                {"identical", identical}},
               prov);
  } else {
    prov.echo();
    std::cout << "mse,psnr,ssim,identical\n"
              << fmt::format("{},{},{},{}\n", format_double(m.mse), format_double(m.psnr), format_double(m.ssim),
                             identical ? 1 : 0);
  }
  return 0;
}

ordered_json piqe_json(const PiqeResult& r) {
  return {{"score", r.score},
          {"label", std::string(to_string(r.label))},
          {"active_blocks", r.active_block_count},
          {"distorted_blocks", r.distorted_block_count},
          {"noisy_blocks", r.noisy_block_count},
          {"distorted_block_ratio", r.distorted_block_ratio}};
}

int run_piqe(const Globals& g, const std::string& in) {
  const PiqeResult r = piqe(load_pgm(in));
  Provenance prov(g, "piqe");
  prov.set("input", in);
  if (g.json) {
    print_json(piqe_json(r), prov);
  } else {
    prov.echo();
    std::cout << "score,label,active_blocks,distorted_blocks,noisy_blocks\n"
              << fmt::format("{:.4f},{},{},{},{}\n", r.score, to_string(r.label), r.active_block_count,
                             r.distorted_block_count, r.noisy_block_count);
  }
  return 0;
}

struct SeriesArgs {
  std::string frames;
  double interval_ms = 78.0;
};

int run_piqe_series(const Globals& g, const SeriesArgs& a) {
  const FrameSequence seq = read_frames(read_file(a.frames));
  const PiqeSeries series = piqe_series(seq, a.interval_ms);
  Provenance prov(g, "piqe-series");
  prov.set("frames", a.frames);
  prov.set("interval_ms", a.interval_ms);
  prov.set("frame_rate_fps", seq.frame_rate_fps());
  prov.set("duration_ms", seq.duration_ms());
  if (g.json) {
    ordered_json j;
    j["samples"] = ordered_json::array();
    for (const auto& s : series.samples) {
      ordered_json row = piqe_json(s.result);
      row["timestamp_ms"] = s.timestamp_ms;
      row["frame_index"] = s.frame_index;
      j["samples"].push_back(std::move(row));
    }
    j["mean_score"] = series.mean_score;
    print_json(j, prov);
  } else {
    prov.echo();
    std::cout << "timestamp_ms,score,label\n";
    for (const auto& s : series.samples) {
      std::cout << fmt::format("{:.3f},{:.4f},{}\n", s.timestamp_ms, s.result.score, to_string(s.result.label));
    }
    std::cout << fmt::format("# mean_score={:.4f}\n", series.mean_score);
  }
  return 0;
}

int run_hist(const Globals& g, const std::string& in) {
  const Image img = load_pgm(in);
  const Histogram h = histogram(img);
  const auto empty = empty_bins(h);
  Provenance prov(g, "hist");
  prov.set("input", in);
  if (g.csv) {
    prov.echo();
    std::cout << "level,count\n";
    for (int v = 0; v < 256; ++v) std::cout << v << "," << h.counts[v] << "\n";
    return 0;
  }
  ordered_json j;
  j["width"] = img.width();
  j["height"] = img.height();
  j["total"] = h.total;
  j["counts"] = h.counts;
  j["empty_bin_count"] = empty.size();
  j["empty_bins"] = empty;
  print_json(j, prov);
  return 0;
}

struct ScanArgs {
  std::string frames, in, geometry, out;
  std::string method = "nni-dr";
};

int run_scanconvert(const Globals& g, const ScanArgs& a) {
  const SectorGeometry geom = a.geometry.empty() ? SectorGeometry{} : [&] {
    const Bytes text = read_file(a.geometry);
    return parse_geometry_json(std::string(text.begin(), text.end()));
  }();
  const Method method = parse_method(a.method);
  Provenance prov(g, "scanconvert");
  prov.set("method", std::string(to_string(method)));
  prov.set("geometry", ordered_json::parse(geometry_to_json(geom)));
  prov.set("output", a.out);
  if (!a.frames.empty()) {
    if (!g.r_file.empty()) throw Error(ErrorCode::InvalidArgument, "--r-file applies to single-frame input only");
    const FrameSequence seq = read_frames(read_file(a.frames));
    const FrameSequence out = convert_sequence(seq, geom, method, g.seed);
    write_file(a.out, write_frames(out));
    prov.set("frames", a.frames);
    prov.set("frame_count", out.frame_count());
    prov.set("frame_seeds", "derive_seed(seed, frame_index)");
  } else {
    DrawStream stream = make_stream(g);
    const Image out = scan_convert(load_pgm(a.in), geom, method, &stream);
    save_pgm(a.out, out);
    prov.set("input", a.in);
    prov.set("draw_source", describe_stream(stream));
    prov.set("draws", stream.draws_emitted());
  }
  if (g.json) {
    print_json({{"output", a.out}}, prov);
  } else {
    prov.echo();
  }
  return 0;
}

struct PhantomArgs {
  std::string geometry, out;
  std::size_t count = 30;
  double fps = 30.0;
};

int run_phantom(const Globals& g, const PhantomArgs& a) {
  const SectorGeometry geom = a.geometry.empty() ? SectorGeometry{} : [&] {
    const Bytes text = read_file(a.geometry);
    return parse_geometry_json(std::string(text.begin(), text.end()));
  }();
  write_file(a.out, write_frames(make_phantom(geom, a.count, a.fps, g.seed)));
  Provenance prov(g, "phantom");
  prov.set("frame_count", a.count);
  prov.set("frame_rate_fps", a.fps);
  prov.set("output", a.out);
  if (g.json) {
    print_json({{"output", a.out}}, prov);
  } else {
    prov.echo();
  }
  return 0;
}

struct BenchArgs {
  std::string input_dir, ref_dir;
  std::vector<std::string> methods{"nni-dr", "nni-sr-eq3"};
  double ratio = 4.0;
  std::string seeds = "1-20";
  std::string apply_filters = "both";
  FilterSettings filter;
  std::string out_csv, out_json, out_summary;
};

int run_bench_cmd(const Globals& g, const BenchArgs& a) {
  BenchConfig config;
  config.input_dir = a.input_dir;
  config.ref_dir = a.ref_dir;
  config.methods.clear();
  for (const auto& m : a.methods) config.methods.push_back(parse_method(m));
  config.ratio = a.ratio;
  config.seeds = parse_seed_list(a.seeds);
  config.filter = a.filter;
  config.apply_filters = parse_filter_phase(a.apply_filters);

  const QualityReport report = run_bench(config, load_pairs(config));
  Provenance prov(g, "bench");
  prov.set("input_dir", a.input_dir);
  prov.set("ref_dir", a.ref_dir);
  prov.set("methods", a.methods);
  prov.set("apply_filters", a.apply_filters);
  prov.set("seed_count", config.seeds.size());
  if (!g.no_timestamp) prov.set("elapsed_seconds", report.elapsed_seconds);

  if (!a.out_csv.empty()) {
    const std::string csv = report_csv(report);
    write_file(a.out_csv, Bytes(csv.begin(), csv.end()));
  }
  if (!a.out_summary.empty()) {
    const std::string csv = summary_csv(report);
    write_file(a.out_summary, Bytes(csv.begin(), csv.end()));
  }
  if (!a.out_json.empty()) {
    auto j = ordered_json::parse(report_json(report, !g.no_timestamp));
    j["provenance"] = prov.json();
    const std::string text = j.dump(2) + "\n";
    write_file(a.out_json, Bytes(text.begin(), text.end()));
  }
  if (g.json) {
    auto j = ordered_json::parse(report_json(report, !g.no_timestamp));
    print_json(j, prov);
  } else {
    prov.echo();
    std::cout << (a.out_csv.empty() ? report_csv(report) : summary_csv(report));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic-rounding interpolation, scan conversion and image-quality toolkit"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  Globals g;
  app.add_option("--seed", g.seed, "MT19937 seed for stochastic draws")->envname("SRINTERP_SEED")->capture_default_str();
  auto* json_flag = app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--csv", g.csv, "CSV output (default for tabular commands)")->excludes(json_flag);
  app.add_flag("--no-timestamp", g.no_timestamp, "Omit wall-clock timestamps and timings");
  app.add_option("--r-file", g.r_file, "Injected draw values, one per line")->check(CLI::ExistingFile);

  Table1Args t1;
  auto* table1 = app.add_subcommand("table1", "Ceil vs stochastic subscript rounding table");
  table1->add_option("--ratio", t1.ratio, "Scaling ratio")->check(CLI::Range(1, 64))->capture_default_str();
  table1->add_option("--rows", t1.rows, "Row count (default: injected draw count, else src-len * ratio)");
  table1->add_option("--src-len", t1.src_len, "Source length when no row count is given")->capture_default_str();

  UpscaleArgs up;
  auto* upscale_cmd = app.add_subcommand("upscale", "Upscale a PGM image");
  upscale_cmd->add_option("--in,--input", up.in, "Input PGM")->required()->check(CLI::ExistingFile);
  upscale_cmd->add_option("--out", up.out, "Output PGM")->required();
  upscale_cmd->add_option("--ratio", up.ratio, "Scaling ratio (>= 1)")->capture_default_str();
  upscale_cmd->add_option("--method", up.method,
                          "nni-dr | nni-sr-eq3 | nni-sr-mode1 | nni-sr-mode2 | bilinear | bicubic")
      ->capture_default_str();

  FilterArgs fa;
  auto* filter_cmd = app.add_subcommand("filter", "Gaussian smoothing and unsharp-mask sharpening");
  filter_cmd->add_option("--in,--input", fa.in, "Input PGM")->required()->check(CLI::ExistingFile);
  filter_cmd->add_option("--out", fa.out, "Output PGM")->required();
  filter_cmd->add_option("--stage", fa.stage, "smooth | sharpen | both")
      ->check(CLI::IsMember({"smooth", "sharpen", "both"}))
      ->capture_default_str();
  add_filter_options(filter_cmd, fa.settings);

  MetricsArgs ma;
  auto* metrics_cmd = app.add_subcommand("metrics", "MSE, PSNR and SSIM against a reference");
  metrics_cmd->add_option("--ref", ma.ref, "Reference PGM")->required()->check(CLI::ExistingFile);
  metrics_cmd->add_option("--test", ma.test, "Test PGM")->required()->check(CLI::ExistingFile);

  std::string piqe_in;
  auto* piqe_cmd = app.add_subcommand("piqe", "No-reference block quality score");
  piqe_cmd->add_option("--in,--input", piqe_in, "Input PGM")->required()->check(CLI::ExistingFile);

  SeriesArgs sa;
  auto* series_cmd = app.add_subcommand("piqe-series", "Quality score sampled over a frame sequence");
  series_cmd->add_option("--frames", sa.frames, "SRIF frame container")->required()->check(CLI::ExistingFile);
  series_cmd->add_option("--interval-ms", sa.interval_ms, "Sampling interval")->capture_default_str();

  std::string hist_in;
  auto* hist_cmd = app.add_subcommand("hist", "256-bin histogram with empty-bin list");
  hist_cmd->add_option("--in,--input", hist_in, "Input PGM")->required()->check(CLI::ExistingFile);

  ScanArgs sc;
  auto* scan_cmd = app.add_subcommand("scanconvert", "Polar to Cartesian sector conversion");
  auto* frames_opt = scan_cmd->add_option("--frames", sc.frames, "SRIF container of polar frames")
                         ->check(CLI::ExistingFile);
  auto* in_opt = scan_cmd->add_option("--in,--input", sc.in, "Single polar frame as PGM")->check(CLI::ExistingFile);
  frames_opt->excludes(in_opt);
  scan_cmd->add_option("--geometry", sc.geometry, "Sector geometry JSON (default geometry if omitted)")
      ->check(CLI::ExistingFile);
  scan_cmd->add_option("--method", sc.method, "Interpolation method")->capture_default_str();
  scan_cmd->add_option("--out", sc.out, "Output SRIF (or PGM with --in)")->required();

  PhantomArgs ph;
  auto* phantom_cmd = app.add_subcommand("phantom", "Write a synthetic polar frame sequence");
  phantom_cmd->add_option("--geometry", ph.geometry, "Sector geometry JSON")->check(CLI::ExistingFile);
  phantom_cmd->add_option("--count", ph.count, "Frame count")->capture_default_str();
  phantom_cmd->add_option("--fps", ph.fps, "Frame rate")->capture_default_str();
  phantom_cmd->add_option("--out", ph.out, "Output SRIF")->required();

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Full-reference benchmark over image pairs");
  bench_cmd->add_option("--input-dir", ba.input_dir, "Directory of low-resolution PGM inputs")->required();
  bench_cmd->add_option("--ref-dir", ba.ref_dir, "Directory of reference PGMs with matching names")->required();
  bench_cmd->add_option("--methods", ba.methods, "Methods to compare")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--ratio", ba.ratio, "Scaling ratio")->capture_default_str();
  bench_cmd->add_option("--seeds", ba.seeds, "Seed list, e.g. 1-20 or 3,5,9")->capture_default_str();
  bench_cmd->add_option("--apply-filters", ba.apply_filters, "before-only | after-only | both")
      ->capture_default_str();
  bench_cmd->add_option("--out-csv", ba.out_csv, "Write per-row CSV here");
  bench_cmd->add_option("--out-json", ba.out_json, "Write JSON report here");
  bench_cmd->add_option("--summary-csv", ba.out_summary, "Write per-method means and deltas here");
  add_filter_options(bench_cmd, ba.filter);

  // Global flags may also follow the subcommand name.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*table1) return run_table1(g, t1);
    if (*upscale_cmd) return run_upscale(g, up);
    if (*filter_cmd) return run_filter(g, fa);
    if (*metrics_cmd) return run_metrics(g, ma);
    if (*piqe_cmd) return run_piqe(g, piqe_in);
    if (*series_cmd) return run_piqe_series(g, sa);
    if (*hist_cmd) return run_hist(g, hist_in);
    if (*scan_cmd) {
      if (sc.frames.empty() && sc.in.empty()) throw Error(ErrorCode::InvalidArgument, "need --frames or --in");
      return run_scanconvert(g, sc);
    }
    if (*phantom_cmd) return run_phantom(g, ph);
    if (*bench_cmd) return run_bench_cmd(g, ba);
  } catch (const Error& e) {
    std::cerr << "srinterp: " << e.what() << "\n";
    return exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "srinterp: internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
