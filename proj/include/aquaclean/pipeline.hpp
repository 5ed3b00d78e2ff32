// Copyright 2026 The AquaClean Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The four-stage enhancement chain and the experiment drivers built on it.
//
// Stage order is fixed: homomorphic -> wavelet -> smoothing -> tone. Stages
// can be switched off but never reordered. The smoothing stage runs in CIE
// Lab with either the bilateral filter (default) or Perona-Malik diffusion
// (runtime baseline).

#ifndef AQUACLEAN_PIPELINE_HPP_
#define AQUACLEAN_PIPELINE_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aquaclean/color.hpp"
#include "aquaclean/config.hpp"
#include "aquaclean/fixtures.hpp"
#include "aquaclean/image.hpp"
#include "aquaclean/io.hpp"
#include "aquaclean/metrics.hpp"
#include "aquaclean/parallel.hpp"
#include "aquaclean/spatial.hpp"
#include "aquaclean/spectral.hpp"
#include "aquaclean/tone.hpp"
#include "aquaclean/wavelet.hpp"

namespace aquaclean {

inline constexpr const char* kVersion = "aquaclean 1.0.0";

struct StageTiming {
  std::string name;
  double seconds = 0.0;
};

struct EnhanceResult {
  ColorImage output;
  std::vector<StageTiming> timings;
  std::vector<std::pair<std::string, ColorImage>> intermediates;
  double smoothing_seconds = 0.0;
  double total_seconds = 0.0;
};

/// Deepest level count not exceeding `requested` that fits the image.
inline int feasible_levels(int requested, int width, int height) {
  int levels = 0;
  while (levels < requested && (2 << levels) <= std::min(width, height)) ++levels;
  return levels;
}

namespace pipeline_detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename Fn>
ColorImage run_stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("stage '") + name + "': " + e.what());
  }
}

}  // namespace pipeline_detail

inline ColorImage smooth_stage(const ColorImage& img, const PipelineConfig& cfg) {
  const ColorImage lab = srgb_to_lab(img);
  const ColorImage smoothed = cfg.smoother == Smoother::kBilateral
                                  ? bilateral_filter(lab, cfg.bilateral)
                                  : anisotropic_diffusion(lab, cfg.diffusion);
  return lab_to_srgb(smoothed);
}

inline ColorImage wavelet_stage(const ColorImage& img, const PipelineConfig& cfg) {
  const int levels = feasible_levels(cfg.wavelet.levels, img.width(), img.height());
  if (levels < 1)
    throw Error(ErrorKind::kTooManyLevels, "image too small for a wavelet split");
  return denoise(img, FilterBank::make(cfg.wavelet.bank), cfg.wavelet.rule, levels);
}

/// Runs the enabled stages in order on an in-memory image.
inline EnhanceResult enhance(const ColorImage& input, const PipelineConfig& cfg,
                             bool keep_intermediates = false) {
  using namespace pipeline_detail;
  require_space(input, ColorSpace::kSrgb8BitScaled, "enhance");
  cfg.validate();
  EnhanceResult res;
  ColorImage current = input;
  const auto pipeline_start = Clock::now();
  auto step = [&](bool enabled, const char* name, auto&& fn) {
    if (!enabled) return;
    const auto start = Clock::now();
    current = run_stage(name, fn);
    const double dt = seconds_since(start);
    res.timings.push_back({name, dt});
    if (keep_intermediates) res.intermediates.emplace_back(name, current);
  };
  step(cfg.stages.homomorphic, "homomorphic",
       [&] { return homomorphic_filter(current, cfg.homomorphic); });
  step(cfg.stages.wavelet, "wavelet", [&] { return wavelet_stage(current, cfg); });
  step(cfg.stages.bilateral, cfg.smoother == Smoother::kBilateral ? "bilateral" : "anisotropic",
       [&] { return smooth_stage(current, cfg); });
  step(cfg.stages.tone, "tone", [&] { return apply_tone(current, cfg.tone_order); });
  res.total_seconds = seconds_since(pipeline_start);
  if (cfg.stages.bilateral && !res.timings.empty()) {
    for (const auto& t : res.timings)
      if (t.name == "bilateral" || t.name == "anisotropic") res.smoothing_seconds = t.seconds;
  }
  res.output = std::move(current);
  return res;
}

struct RunReport {
  std::string input_path;
  std::vector<StageTiming> stage_seconds;
  double total_seconds = 0.0;
  std::vector<std::string> output_paths;
  std::string output_image;
  double mse_vs_input = 0.0;
  double psnr_vs_input = 0.0;
  double mean_gradient_input = 0.0;
  double mean_gradient_output = 0.0;
  std::string histogram_input_csv;
  std::string histogram_output_csv;
  std::string version = kVersion;
  int threads = 1;

  nlohmann::json to_json() const {
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& t : stage_seconds)
      stages.push_back({{"stage", t.name}, {"seconds", t.seconds}});
    nlohmann::json j;
    j["input"] = input_path;
    j["stages"] = stages;
    j["total_seconds"] = total_seconds;
    j["output_image"] = output_image;
    j["outputs"] = output_paths;
    j["mse_vs_input"] = mse_vs_input;
    j["psnr_db_vs_input"] = std::isfinite(psnr_vs_input) ? nlohmann::json(psnr_vs_input)
                                                         : nlohmann::json("inf");
    j["mean_gradient_input"] = mean_gradient_input;
    j["mean_gradient_output"] = mean_gradient_output;
    j["histogram_csv"] = {{"input", histogram_input_csv},
                          {"output", histogram_output_csv}};
    j["environment"] = {{"version", version}, {"threads", threads}};
    return j;
  }
};

struct RunOptions {
  bool dump_stages = false;
  bool dump_pyramid = false;
};

/// Loads `input`, runs the pipeline and writes the enhanced image, gradient
/// histograms, edge maps and a JSON report into `outdir`. On failure every
/// file this call created is removed before the error propagates.
inline RunReport run_pipeline(const PipelineConfig& cfg, const std::string& input,
                              const std::string& outdir, RunOptions opts = {}) {
  namespace fs = std::filesystem;
  cfg.validate();
  const ColorImage img = load_image(input);
  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (ec) throw Error(ErrorKind::kIoError, outdir + ": " + ec.message());

  const std::string stem = fs::path(input).stem().string();
  auto out_path = [&](const std::string& suffix) {
    return (fs::path(outdir) / (stem + suffix)).string();
  };
  std::vector<std::string> written;
  try {
    RunReport report;
    report.input_path = input;
    report.threads = thread_count();

    const bool dumps = opts.dump_stages;
    EnhanceResult res = enhance(img, cfg, dumps);
    report.stage_seconds = res.timings;
    report.total_seconds = res.total_seconds;

    if (dumps) {
      int idx = 1;
      for (const auto& [name, stage_img] : res.intermediates) {
        const std::string p = out_path("_stage" + std::to_string(idx++) + "_" + name + ".ppm");
        save_image(stage_img, p);
        written.push_back(p);
      }
    }
    if (opts.dump_pyramid) {
      // Pyramid of the luminance entering the wavelet stage.
      ColorImage pre = cfg.stages.homomorphic ? homomorphic_filter(img, cfg.homomorphic) : img;
      const ImagePlane luma = luminance(pre);
      const int levels = feasible_levels(cfg.wavelet.levels, luma.width(), luma.height());
      if (levels >= 1) {
        auto pyr = dwt2_forward(luma, FilterBank::make(cfg.wavelet.bank), levels);
        for (auto& p : dump_pyramid(pyr, outdir, stem + "_pyramid")) written.push_back(p);
      }
    }

    report.output_image = out_path("_enhanced.ppm");
    save_image(res.output, report.output_image);
    written.push_back(report.output_image);

    // Metrics are taken on the quantized output, as it exists on disk.
    const ColorImage saved = load_image(report.output_image);
    report.mse_vs_input = mse(saved, img);
    report.psnr_vs_input = psnr_from_mse(report.mse_vs_input);

    const ImagePlane g_in = gradient_magnitude(img);
    const ImagePlane g_out = gradient_magnitude(saved);
    report.mean_gradient_input = mean(g_in);
    report.mean_gradient_output = mean(g_out);
    const double upper =
        std::max(*std::max_element(g_in.samples().begin(), g_in.samples().end()),
                 *std::max_element(g_out.samples().begin(), g_out.samples().end()));
    report.histogram_input_csv = out_path("_hist_input.csv");
    write_histogram_csv(gradient_histogram(g_in, cfg.metrics.histogram_bins, upper),
                        report.histogram_input_csv);
    written.push_back(report.histogram_input_csv);
    report.histogram_output_csv = out_path("_hist_output.csv");
    write_histogram_csv(gradient_histogram(g_out, cfg.metrics.histogram_bins, upper),
                        report.histogram_output_csv);
    written.push_back(report.histogram_output_csv);

    const std::string edges_in = out_path("_edges_input.pgm");
    save_plane(edge_map(img, cfg.metrics.edge_low, cfg.metrics.edge_high), edges_in);
    written.push_back(edges_in);
    const std::string edges_out = out_path("_edges_output.pgm");
    save_plane(edge_map(saved, cfg.metrics.edge_low, cfg.metrics.edge_high), edges_out);
    written.push_back(edges_out);

    const std::string report_path = out_path("_report.json");
    written.push_back(report_path);
    report.output_paths = written;
    std::ofstream out(report_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIoError, report_path + ": cannot open for writing");
    out << report.to_json().dump(2) << '\n';
    if (!out) throw Error(ErrorKind::kIoError, report_path + ": write failed");
    return report;
  } catch (...) {
    for (const auto& p : written) fs::remove(p, ec);
    throw;
  }
}

// ---------------------------------------------------------------------------
// Experiment drivers.

struct SweepInput {
  std::string name;
  ColorImage image;
  std::optional<ColorImage> reference;  // clean image, when known
};

inline SweepInput sweep_input_from_file(const std::string& path,
                                        const std::optional<std::string>& reference) {
  SweepInput in{std::filesystem::path(path).filename().string(), load_image(path),
                std::nullopt};
  if (reference) {
    in.reference = load_image(*reference);
    if (!in.reference->same_shape(in.image))
      throw Error(ErrorKind::kDimensionMismatch,
                  *reference + ": reference size differs from " + path);
  }
  return in;
}

namespace pipeline_detail {

// Without a reference the image is homomorphic-filtered (if enabled) and the
// denoised result is compared against that pre-denoise image. With a clean
// reference the input is denoised directly and compared to the reference.
inline ColorImage denoise_source(const SweepInput& in, const PipelineConfig& cfg) {
  if (in.reference || !cfg.stages.homomorphic) return in.image;
  return homomorphic_filter(in.image, cfg.homomorphic);
}

inline int levels_for(const PipelineConfig& cfg, const ColorImage& img) {
  const int levels = feasible_levels(cfg.wavelet.levels, img.width(), img.height());
  if (levels < 1)
    throw Error(ErrorKind::kTooManyLevels, "image too small for a wavelet split");
  return levels;
}

inline void write_csv(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoError, path + ": cannot open for writing");
  out << text;
  if (!out) throw Error(ErrorKind::kIoError, path + ": write failed");
}

inline std::string fmt(double v) {
  std::ostringstream o;
  o.precision(10);
  o << v;
  return o.str();
}

}  // namespace pipeline_detail

struct BankRow {
  std::string image;
  WaveletName bank;
  double mse;
  double psnr_db;
};

inline std::vector<BankRow> sweep_filter_banks(
    const PipelineConfig& cfg, const std::vector<SweepInput>& inputs,
    const std::vector<WaveletName>& banks = {std::begin(kAllWavelets),
                                             std::end(kAllWavelets)}) {
  std::vector<BankRow> rows;
  for (const auto& in : inputs) {
    const ColorImage source = pipeline_detail::denoise_source(in, cfg);
    const ColorImage& target = in.reference ? *in.reference : source;
    const int levels = pipeline_detail::levels_for(cfg, source);
    for (WaveletName b : banks) {
      const ColorImage out = denoise(source, FilterBank::make(b), cfg.wavelet.rule, levels);
      const double m = mse(out, target);
      rows.push_back({in.name, b, m, psnr_from_mse(m)});
    }
  }
  return rows;
}

inline std::string banks_csv(const std::vector<BankRow>& rows) {
  std::string s = "image,bank,mse,psnr_db\n";
  for (const auto& r : rows)
    s += r.image + "," + to_string(r.bank) + "," + pipeline_detail::fmt(r.mse) + "," +
         pipeline_detail::fmt(r.psnr_db) + "\n";
  return s;
}

struct RuleRow {
  std::string image;
  ShrinkageKind rule;
  double psnr_db;
};

inline std::vector<RuleRow> sweep_shrinkage_rules(
    const PipelineConfig& cfg, const std::vector<SweepInput>& inputs,
    const std::vector<ShrinkageKind>& rules = {std::begin(kAllShrinkageKinds),
                                               std::end(kAllShrinkageKinds)}) {
  std::vector<RuleRow> rows;
  const FilterBank bank = FilterBank::make(cfg.wavelet.bank);
  for (const auto& in : inputs) {
    const ColorImage source = pipeline_detail::denoise_source(in, cfg);
    const ColorImage& target = in.reference ? *in.reference : source;
    const int levels = pipeline_detail::levels_for(cfg, source);
    for (ShrinkageKind k : rules) {
      const ShrinkageRule rule{k, cfg.wavelet.rule.mode};
      rows.push_back({in.name, k, psnr(denoise(source, bank, rule, levels), target)});
    }
  }
  return rows;
}

inline std::string rules_csv(const std::vector<RuleRow>& rows) {
  std::string s = "image,rule,psnr_db\n";
  for (const auto& r : rows)
    s += r.image + "," + to_string(r.rule) + "," + pipeline_detail::fmt(r.psnr_db) + "\n";
  return s;
}

struct BilateralRow {
  std::string image;
  double sigma_d;
  double sigma_r;
  double residual_noise;  // robust noise sigma of the filtered L plane
  double edge_retention;  // output / input gradient on the strongest edges
};

/// Smoothness and edge-retention proxies of one bilateral setting, measured
/// on the L plane: residual noise is the HH_1 median estimate (Haar) of the
/// filtered plane; edge retention is the ratio of summed gradient magnitude
/// after/before filtering over the pixels in the top decile of input
/// gradient.
inline BilateralRow bilateral_proxies(const std::string& name, const ColorImage& lab,
                                      const BilateralParams& p) {
  const ColorImage out = bilateral_filter(lab, p);
  BilateralRow row{name, p.sigma_d, p.sigma_r, 0.0, 0.0};
  if (std::min(out.width(), out.height()) >= 2) {
    row.residual_noise =
        estimate_noise_sigma(dwt2_forward(out.plane(0), FilterBank::make(WaveletName::kHaar), 1));
  }
  const ImagePlane g_in = gradient_magnitude(lab.plane(0));
  const ImagePlane g_out = gradient_magnitude(out.plane(0));
  std::vector<double> sorted(g_in.samples().begin(), g_in.samples().end());
  const std::size_t cut = sorted.size() * 9 / 10;
  std::nth_element(sorted.begin(), sorted.begin() + cut, sorted.end());
  const double threshold = sorted[cut];
  double before = 0.0, after = 0.0;
  for (std::size_t i = 0; i < g_in.size(); ++i) {
    if (g_in.samples()[i] >= threshold) {
      before += g_in.samples()[i];
      after += g_out.samples()[i];
    }
  }
  row.edge_retention = before > 0.0 ? after / before : 1.0;
  return row;
}

inline std::vector<double> default_sigma_d_list() {
  std::vector<double> v;
  for (int i = 1; i <= 10; ++i) v.push_back(i);
  return v;
}

inline std::vector<double> default_sigma_r_list() {
  std::vector<double> v;
  for (int i = 10; i <= 200; i += 10) v.push_back(i);
  return v;
}

inline std::vector<BilateralRow> sweep_bilateral_params(
    const PipelineConfig& cfg, const std::vector<SweepInput>& inputs,
    const std::vector<double>& sigma_d_list, const std::vector<double>& sigma_r_list) {
  if (sigma_d_list.empty() || sigma_r_list.empty())
    throw Error(ErrorKind::kInvalidParameter, "bilateral sweep lists must be non-empty");
  std::vector<BilateralRow> rows;
  for (const auto& in : inputs) {
    const ColorImage lab = srgb_to_lab(in.image);
    for (double sd : sigma_d_list) {
      for (double sr : sigma_r_list) {
        BilateralParams p = cfg.bilateral;
        p.sigma_d = sd;
        p.sigma_r = sr;
        p.radius = 0;
        rows.push_back(bilateral_proxies(in.name, lab, p));
      }
    }
  }
  return rows;
}

inline std::string bilateral_csv(const std::vector<BilateralRow>& rows) {
  using pipeline_detail::fmt;
  std::string s = "image,sigma_d,sigma_r,residual_noise,edge_retention\n";
  for (const auto& r : rows)
    s += r.image + "," + fmt(r.sigma_d) + "," + fmt(r.sigma_r) + "," +
         fmt(r.residual_noise) + "," + fmt(r.edge_retention) + "\n";
  return s;
}

struct BenchRow {
  std::string image;
  Smoother variant;
  int repetitions;
  double median_seconds;
  double min_seconds;
  double max_seconds;
  double smoothing_median_seconds;
  bool unstable;  // max/min >= 1.5 across repetitions
};

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Times the full pipeline once with each smoother, `repetitions` times per
/// variant, one image at a time.
inline std::vector<BenchRow> benchmark_smoothers(const PipelineConfig& cfg,
                                                 const std::vector<SweepInput>& inputs,
                                                 int repetitions) {
  if (repetitions < 3)
    throw Error(ErrorKind::kInvalidParameter, "benchmark needs at least 3 repetitions");
  std::vector<BenchRow> rows;
  for (const auto& in : inputs) {
    for (Smoother variant : {Smoother::kBilateral, Smoother::kAnisotropic}) {
      PipelineConfig c = cfg;
      c.smoother = variant;
      c.stages.bilateral = true;
      std::vector<double> total, smoothing;
      for (int r = 0; r < repetitions; ++r) {
        const EnhanceResult res = enhance(in.image, c);
        total.push_back(res.total_seconds);
        smoothing.push_back(res.smoothing_seconds);
      }
      const auto [lo, hi] = std::minmax_element(total.begin(), total.end());
      rows.push_back({in.name, variant, repetitions, median_of(total), *lo, *hi,
                      median_of(smoothing), *hi >= 1.5 * *lo});
    }
  }
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  using pipeline_detail::fmt;
  std::string s =
      "image,variant,repetitions,median_s,min_s,max_s,smoothing_median_s,unstable\n";
  for (const auto& r : rows)
    s += r.image + "," + to_string(r.variant) + "," + std::to_string(r.repetitions) + "," +
         fmt(r.median_seconds) + "," + fmt(r.min_seconds) + "," + fmt(r.max_seconds) + "," +
         fmt(r.smoothing_median_seconds) + "," + (r.unstable ? "true" : "false") + "\n";
  return s;
}

/// Writes the shipped fixture set into `dir` and returns the file names:
/// degraded_<k>.ppm with degraded_<k>_clean.ppm, noisy_<k>.ppm with
/// noisy_<k>_clean.ppm (k = 0..3, 256x256), and bench_512.ppm.
inline std::vector<std::string> write_fixtures(const std::string& dir, std::uint64_t seed,
                                               int size = 256) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIoError, dir + ": " + ec.message());
  std::vector<std::string> files;
  auto put = [&](const ColorImage& img, const std::string& name) {
    const std::string p = (fs::path(dir) / name).string();
    save_image(img, p);
    files.push_back(p);
  };
  for (int k = 0; k < 4; ++k) {
    const auto d = make_degraded_fixture(k, size, seed);
    put(d.degraded, "degraded_" + std::to_string(k) + ".ppm");
    put(d.clean, "degraded_" + std::to_string(k) + "_clean.ppm");
    const auto n = make_noisy_fixture(k, size, seed);
    put(n.noisy, "noisy_" + std::to_string(k) + ".ppm");
    put(n.clean, "noisy_" + std::to_string(k) + "_clean.ppm");
  }
  put(make_degraded_fixture(0, 512, seed).degraded, "bench_512.ppm");
  return files;
}

}  // namespace aquaclean

#endif  // AQUACLEAN_PIPELINE_HPP_
