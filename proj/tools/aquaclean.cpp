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

// Command-line front end. Exit codes: 0 success, 1 processing error,
// 2 configuration or usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "aquaclean/aquaclean.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitStage = 1;
constexpr int kExitConfig = 2;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  int threads = 0;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("-c,--config", o.config_path, "INI configuration file");
  app->add_option("--set", o.overrides, "Override a setting, section.key=value")
      ->type_name("KEY=VALUE");
  app->add_option("-j,--threads", o.threads, "Worker threads (0 = auto)")
      ->check(CLI::NonNegativeNumber);
}

aquaclean::PipelineConfig build_config(const CommonOptions& o) {
  aquaclean::PipelineConfig cfg;
  if (!o.config_path.empty()) cfg = aquaclean::load_config(o.config_path);
  for (const auto& s : o.overrides) aquaclean::apply_override(cfg, s);
  cfg.validate();
  if (o.threads > 0) aquaclean::set_thread_count(o.threads);
  return cfg;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
  } else {
    aquaclean::pipeline_detail::write_csv(path, text);
    std::cerr << "wrote " << path << '\n';
  }
}

std::vector<aquaclean::SweepInput> load_inputs(const std::vector<std::string>& paths,
                                               const std::vector<std::string>& refs) {
  if (!refs.empty() && refs.size() != paths.size())
    throw aquaclean::Error(aquaclean::ErrorKind::kConfig,
                           "--reference must be given once per input");
  std::vector<aquaclean::SweepInput> inputs;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::optional<std::string> ref;
    if (!refs.empty()) ref = refs[i];
    inputs.push_back(aquaclean::sweep_input_from_file(paths[i], ref));
  }
  return inputs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Underwater image enhancement pipeline"};
  app.set_version_flag("--version", std::string(aquaclean::kVersion));
  app.require_subcommand(1);

  // enhance
  CommonOptions enhance_common;
  std::string enhance_input, enhance_outdir = ".";
  aquaclean::RunOptions run_opts;
  bool no_homomorphic = false, no_wavelet = false, no_bilateral = false, no_tone = false;
  auto* enhance = app.add_subcommand("enhance", "Run the enhancement pipeline on one image");
  enhance->add_option("input", enhance_input, "Input PPM/PGM image")->required();
  enhance->add_option("-o,--outdir", enhance_outdir, "Output directory");
  add_common(enhance, enhance_common);
  enhance->add_flag("--dump-stages", run_opts.dump_stages, "Write every stage output");
  enhance->add_flag("--dump-pyramid", run_opts.dump_pyramid,
                    "Write the wavelet subbands as PGM files");
  enhance->add_flag("--no-homomorphic", no_homomorphic);
  enhance->add_flag("--no-wavelet", no_wavelet);
  enhance->add_flag("--no-bilateral", no_bilateral, "Disable the smoothing stage");
  enhance->add_flag("--no-tone", no_tone);

  // sweep
  CommonOptions sweep_common;
  std::string sweep_kind, sweep_out;
  std::vector<std::string> sweep_inputs, sweep_refs;
  std::vector<double> sigma_d_list = aquaclean::default_sigma_d_list();
  std::vector<double> sigma_r_list = aquaclean::default_sigma_r_list();
  auto* sweep = app.add_subcommand("sweep", "Parameter sweeps written as CSV");
  sweep->add_option("kind", sweep_kind, "banks, rules or bilateral")
      ->required()
      ->check(CLI::IsMember({"banks", "rules", "bilateral"}));
  sweep->add_option("inputs", sweep_inputs, "Input images")->required();
  sweep->add_option("-r,--reference", sweep_refs,
                    "Clean reference per input, in input order (banks, rules)");
  sweep->add_option("-o,--output", sweep_out, "CSV path (default: stdout)");
  sweep->add_option("--sigma-d", sigma_d_list, "Bilateral sigma_d values")->delimiter(',');
  sweep->add_option("--sigma-r", sigma_r_list, "Bilateral sigma_r values")->delimiter(',');
  add_common(sweep, sweep_common);

  // bench
  CommonOptions bench_common;
  std::vector<std::string> bench_inputs;
  std::string bench_out;
  int reps = 5;
  auto* bench = app.add_subcommand("bench", "Time bilateral vs anisotropic pipelines");
  bench->add_option("inputs", bench_inputs, "Input images")->required();
  bench->add_option("--reps", reps, "Repetitions per variant")->check(CLI::Range(3, 1000));
  bench->add_option("-o,--output", bench_out, "CSV path (default: stdout)");
  add_common(bench, bench_common);

  // fixtures
  std::uint64_t fixture_seed = 1;
  std::string fixture_dir = "fixtures";
  int fixture_size = 256;
  auto* fixtures = app.add_subcommand("fixtures", "Synthetic test images");
  auto* generate = fixtures->add_subcommand("generate", "Write the fixture set");
  fixtures->require_subcommand(1);
  generate->add_option("--seed", fixture_seed, "Generator seed");
  generate->add_option("-o,--outdir", fixture_dir, "Output directory");
  generate->add_option("--size", fixture_size, "Side of the 256-class fixtures")
      ->check(CLI::Range(16, 8192));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*enhance) {
      auto cfg = build_config(enhance_common);
      if (no_homomorphic) cfg.stages.homomorphic = false;
      if (no_wavelet) cfg.stages.wavelet = false;
      if (no_bilateral) cfg.stages.bilateral = false;
      if (no_tone) cfg.stages.tone = false;
      const auto report = aquaclean::run_pipeline(cfg, enhance_input, enhance_outdir, run_opts);
      for (const auto& t : report.stage_seconds)
        std::cerr << t.name << ": " << t.seconds << " s\n";
      std::cout << report.output_image << '\n';
    } else if (*sweep) {
      const auto cfg = build_config(sweep_common);
      const auto inputs = load_inputs(sweep_inputs, sweep_refs);
      if (sweep_kind == "banks") {
        emit(aquaclean::banks_csv(aquaclean::sweep_filter_banks(cfg, inputs)), sweep_out);
      } else if (sweep_kind == "rules") {
        emit(aquaclean::rules_csv(aquaclean::sweep_shrinkage_rules(cfg, inputs)), sweep_out);
      } else {
        emit(aquaclean::bilateral_csv(
                 aquaclean::sweep_bilateral_params(cfg, inputs, sigma_d_list, sigma_r_list)),
             sweep_out);
      }
    } else if (*bench) {
      const auto cfg = build_config(bench_common);
      const auto inputs = load_inputs(bench_inputs, {});
      emit(aquaclean::bench_csv(aquaclean::benchmark_smoothers(cfg, inputs, reps)), bench_out);
    } else if (*generate) {
      for (const auto& f : aquaclean::write_fixtures(fixture_dir, fixture_seed, fixture_size))
        std::cout << f << '\n';
    }
  } catch (const aquaclean::Error& e) {
    std::cerr << "error [" << aquaclean::to_string(e.kind()) << "]: " << e.what() << '\n';
    return e.kind() == aquaclean::ErrorKind::kConfig ? kExitConfig : kExitStage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStage;
  }
  return kExitOk;
}
