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

// PipelineConfig and its INI-style text form:
//
//   # comment
//   [wavelet]
//   bank = coif4
//   levels = 4
//
// Every key is optional. Unknown sections, keys or malformed values raise
// ErrorKind::kConfig.

#ifndef AQUACLEAN_CONFIG_HPP_
#define AQUACLEAN_CONFIG_HPP_

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "aquaclean/image.hpp"
#include "aquaclean/spatial.hpp"
#include "aquaclean/spectral.hpp"
#include "aquaclean/tone.hpp"
#include "aquaclean/wavelet.hpp"

namespace aquaclean {

enum class Smoother { kBilateral, kAnisotropic };

inline const char* to_string(Smoother s) {
  return s == Smoother::kBilateral ? "bilateral" : "anisotropic";
}

struct StageSwitches {
  bool homomorphic = true;
  bool wavelet = true;
  bool bilateral = true;  // the smoothing stage, whichever smoother runs
  bool tone = true;
};

struct WaveletConfig {
  WaveletName bank = WaveletName::kCoif4;
  ShrinkageRule rule{ShrinkageKind::kModifiedBayes, ThresholdMode::kSoft};
  int levels = 4;
};

struct MetricsConfig {
  int histogram_bins = 64;
  double edge_low = 40.0;
  double edge_high = 100.0;
};

struct PipelineConfig {
  HomomorphicParams homomorphic;
  WaveletConfig wavelet;
  BilateralParams bilateral;
  DiffusionParams diffusion;
  Smoother smoother = Smoother::kBilateral;
  ToneOrder tone_order = ToneOrder::kEqualizeThenStretch;
  StageSwitches stages;
  MetricsConfig metrics;
  std::uint64_t seed = 1;

  void validate() const {
    try {
      homomorphic.validate();
      bilateral.validate();
      diffusion.validate();
    } catch (const Error& e) {
      throw Error(ErrorKind::kConfig, e.what());
    }
    if (wavelet.levels < 1)
      throw Error(ErrorKind::kConfig, "wavelet.levels must be >= 1");
    if (metrics.histogram_bins < 2)
      throw Error(ErrorKind::kConfig, "metrics.histogram_bins must be >= 2");
    if (!(metrics.edge_low >= 0.0) || !(metrics.edge_high >= metrics.edge_low))
      throw Error(ErrorKind::kConfig, "metrics edge thresholds need 0 <= low <= high");
  }
};

namespace config_detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size() && std::isfinite(d)) return d;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::kConfig, key + ": expected a number, got '" + v + "'");
}

inline long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long i = std::stoll(v, &used);
    if (used == v.size()) return i;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::kConfig, key + ": expected an integer, got '" + v + "'");
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw Error(ErrorKind::kConfig, key + ": expected a boolean, got '" + v + "'");
}

template <typename Parse>
auto to_enum(const std::string& key, const std::string& v, Parse parse) {
  try {
    return parse(v);
  } catch (const Error& e) {
    throw Error(ErrorKind::kConfig, key + ": " + e.what());
  }
}

}  // namespace config_detail

/// Applies one `section.key = value` setting.
inline void apply_setting(PipelineConfig& cfg, const std::string& section,
                          const std::string& key, const std::string& value) {
  using namespace config_detail;
  const std::string name = section + "." + key;
  if (section == "homomorphic") {
    if (key == "r_high") return void(cfg.homomorphic.r_high = to_double(name, value));
    if (key == "r_low") return void(cfg.homomorphic.r_low = to_double(name, value));
    if (key == "cutoff") return void(cfg.homomorphic.cutoff = to_double(name, value));
    if (key == "epsilon_log")
      return void(cfg.homomorphic.epsilon_log = to_double(name, value));
    if (key == "channels") {
      if (value == "rgb") return void(cfg.homomorphic.channels = HomomorphicChannels::kRgb);
      if (value == "luminance")
        return void(cfg.homomorphic.channels = HomomorphicChannels::kLuminance);
      throw Error(ErrorKind::kConfig, name + ": expected rgb|luminance");
    }
  } else if (section == "wavelet") {
    if (key == "bank") return void(cfg.wavelet.bank = to_enum(name, value, parse_wavelet));
    if (key == "rule")
      return void(cfg.wavelet.rule.kind = to_enum(name, value, parse_shrinkage));
    if (key == "mode")
      return void(cfg.wavelet.rule.mode = to_enum(name, value, parse_threshold_mode));
    if (key == "levels") return void(cfg.wavelet.levels = static_cast<int>(to_int(name, value)));
  } else if (section == "bilateral") {
    if (key == "sigma_d") return void(cfg.bilateral.sigma_d = to_double(name, value));
    if (key == "sigma_r") return void(cfg.bilateral.sigma_r = to_double(name, value));
    if (key == "radius") return void(cfg.bilateral.radius = static_cast<int>(to_int(name, value)));
  } else if (section == "diffusion") {
    if (key == "iterations")
      return void(cfg.diffusion.iterations = static_cast<int>(to_int(name, value)));
    if (key == "lambda") return void(cfg.diffusion.lambda = to_double(name, value));
    if (key == "kappa") return void(cfg.diffusion.kappa = to_double(name, value));
    if (key == "conductance") {
      if (value == "exp") return void(cfg.diffusion.conductance = Conductance::kExp);
      if (value == "rational")
        return void(cfg.diffusion.conductance = Conductance::kRational);
      throw Error(ErrorKind::kConfig, name + ": expected exp|rational");
    }
  } else if (section == "tone") {
    if (key == "order") return void(cfg.tone_order = to_enum(name, value, parse_tone_order));
  } else if (section == "stages") {
    if (key == "homomorphic") return void(cfg.stages.homomorphic = to_bool(name, value));
    if (key == "wavelet") return void(cfg.stages.wavelet = to_bool(name, value));
    if (key == "bilateral") return void(cfg.stages.bilateral = to_bool(name, value));
    if (key == "tone") return void(cfg.stages.tone = to_bool(name, value));
    if (key == "smoother") {
      if (value == "bilateral") return void(cfg.smoother = Smoother::kBilateral);
      if (value == "anisotropic") return void(cfg.smoother = Smoother::kAnisotropic);
      throw Error(ErrorKind::kConfig, name + ": expected bilateral|anisotropic");
    }
  } else if (section == "metrics") {
    if (key == "histogram_bins")
      return void(cfg.metrics.histogram_bins = static_cast<int>(to_int(name, value)));
    if (key == "edge_low") return void(cfg.metrics.edge_low = to_double(name, value));
    if (key == "edge_high") return void(cfg.metrics.edge_high = to_double(name, value));
  } else if (section == "run") {
    if (key == "seed") return void(cfg.seed = static_cast<std::uint64_t>(to_int(name, value)));
  } else {
    throw Error(ErrorKind::kConfig, "unknown section [" + section + "]");
  }
  throw Error(ErrorKind::kConfig, "unknown key " + name);
}

/// Applies a `section.key=value` override string.
inline void apply_override(PipelineConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    throw Error(ErrorKind::kConfig,
                "override must look like section.key=value: '" + assignment + "'");
  apply_setting(cfg, config_detail::trim(assignment.substr(0, dot)),
                config_detail::trim(assignment.substr(dot + 1, eq - dot - 1)),
                config_detail::trim(assignment.substr(eq + 1)));
}

/// Parses INI text on top of `base` and validates the result.
inline PipelineConfig parse_config(const std::string& text,
                                   PipelineConfig base = PipelineConfig{}) {
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = config_detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error(ErrorKind::kConfig,
                    "line " + std::to_string(line_no) + ": unterminated section");
      section = config_detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || section.empty())
      throw Error(ErrorKind::kConfig,
                  "line " + std::to_string(line_no) + ": expected key = value");
    apply_setting(base, section, config_detail::trim(line.substr(0, eq)),
                  config_detail::trim(line.substr(eq + 1)));
  }
  base.validate();
  return base;
}

inline PipelineConfig load_config(const std::string& path,
                                  PipelineConfig base = PipelineConfig{}) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kConfig, path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

/// Serializes every setting; parse_config(to_config_text(c)) reproduces c.
inline std::string to_config_text(const PipelineConfig& c) {
  std::ostringstream o;
  o.precision(17);
  auto b = [](bool v) { return v ? "true" : "false"; };
  o << "[homomorphic]\nr_high = " << c.homomorphic.r_high
    << "\nr_low = " << c.homomorphic.r_low << "\ncutoff = " << c.homomorphic.cutoff
    << "\nepsilon_log = " << c.homomorphic.epsilon_log << "\nchannels = "
    << (c.homomorphic.channels == HomomorphicChannels::kRgb ? "rgb" : "luminance")
    << "\n\n[wavelet]\nbank = " << to_string(c.wavelet.bank)
    << "\nrule = " << to_string(c.wavelet.rule.kind)
    << "\nmode = " << to_string(c.wavelet.rule.mode)
    << "\nlevels = " << c.wavelet.levels << "\n\n[bilateral]\nsigma_d = "
    << c.bilateral.sigma_d << "\nsigma_r = " << c.bilateral.sigma_r
    << "\nradius = " << c.bilateral.radius << "\n\n[diffusion]\niterations = "
    << c.diffusion.iterations << "\nlambda = " << c.diffusion.lambda
    << "\nkappa = " << c.diffusion.kappa << "\nconductance = "
    << (c.diffusion.conductance == Conductance::kExp ? "exp" : "rational")
    << "\n\n[tone]\norder = " << to_string(c.tone_order)
    << "\n\n[stages]\nhomomorphic = " << b(c.stages.homomorphic)
    << "\nwavelet = " << b(c.stages.wavelet) << "\nbilateral = " << b(c.stages.bilateral)
    << "\ntone = " << b(c.stages.tone) << "\nsmoother = " << to_string(c.smoother)
    << "\n\n[metrics]\nhistogram_bins = " << c.metrics.histogram_bins
    << "\nedge_low = " << c.metrics.edge_low << "\nedge_high = " << c.metrics.edge_high
    << "\n\n[run]\nseed = " << c.seed << "\n";
  return o.str();
}

}  // namespace aquaclean

#endif  // AQUACLEAN_CONFIG_HPP_
