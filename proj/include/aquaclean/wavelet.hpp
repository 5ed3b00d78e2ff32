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

// Orthogonal 2D dyadic wavelet transform and subband-adaptive shrinkage.
//
// The transform is separable (rows, then columns) with periodic boundary
// extension. Odd lengths are made even by replicating the last sample before
// each split; the original lengths are kept in the pyramid so the inverse
// can crop back exactly.
//
// Denoising thresholds every detail subband with a per-subband threshold
// derived from the noise level (median absolute deviation of the finest
// diagonal band) and the subband's own second moment; the coarse residual is
// never touched.

#ifndef AQUACLEAN_WAVELET_HPP_
#define AQUACLEAN_WAVELET_HPP_

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "aquaclean/image.hpp"
#include "aquaclean/io.hpp"
#include "aquaclean/parallel.hpp"

namespace aquaclean {

enum class WaveletName { kHaar, kDb4, kSym4, kCoif4 };

inline const char* to_string(WaveletName name) {
  switch (name) {
    case WaveletName::kHaar: return "haar";
    case WaveletName::kDb4: return "db4";
    case WaveletName::kSym4: return "sym4";
    case WaveletName::kCoif4: return "coif4";
  }
  return "unknown";
}

inline constexpr WaveletName kAllWavelets[] = {
    WaveletName::kHaar, WaveletName::kDb4, WaveletName::kSym4,
    WaveletName::kCoif4};

inline WaveletName parse_wavelet(const std::string& text) {
  for (WaveletName n : kAllWavelets)
    if (text == to_string(n)) return n;
  throw Error(ErrorKind::kInvalidParameter, "unknown filter bank '" + text + "'");
}

namespace wavelet_detail {

// Scaling (lowpass) filters of the orthogonal families, 4 vanishing moments
// for db4/sym4, 24-tap coiflet for coif4.
inline const std::vector<double>& scaling_taps(WaveletName name) {
  static const std::vector<double> haar = {0.7071067811865476,
                                           0.7071067811865476};
  static const std::vector<double> db4 = {
      0.2303778133088965,   0.7148465705529157,   0.6308807679298589,
      -0.027983769416859854, -0.18703481171909309, 0.030841381835560764,
      0.0328830116668852,   -0.010597401785069032};
  static const std::vector<double> sym4 = {
      0.0322231006040427,   -0.012603967262037833, -0.09921954357684722,
      0.29785779560527736,  0.8037387518059161,    0.49761866763201545,
      -0.02963552764599851, -0.07576571478927333};
  static const std::vector<double> coif4 = {
      0.000892313902537003,    -0.001629492425226786,   -0.007346167936268051,
      0.01606894713157503,     0.02668230466960483,     -0.08126671024919373,
      -0.05607731960356926,    0.41530842700068227,     0.7822389344242826,
      0.43438603311435653,     -0.06662747236681717,    -0.09622042453595264,
      0.03933442260558915,     0.02508225333794961,     -0.015211728187697211,
      -0.0056582838001308835,  0.0037514346971460866,   0.0012665610789256603,
      -0.0005890202246332165,  -0.0002599743371222568,  6.233885431278719e-05,
      3.1229861599195265e-05,  -3.259647940030751e-06,  -1.7849909144933469e-06};
  switch (name) {
    case WaveletName::kHaar: return haar;
    case WaveletName::kDb4: return db4;
    case WaveletName::kSym4: return sym4;
    case WaveletName::kCoif4: return coif4;
  }
  return haar;
}

}  // namespace wavelet_detail

/// Analysis/synthesis tap pairs of an orthogonal two-channel filter bank.
struct FilterBank {
  WaveletName name = WaveletName::kHaar;
  std::vector<double> lowpass_analysis;
  std::vector<double> highpass_analysis;
  std::vector<double> lowpass_synthesis;
  std::vector<double> highpass_synthesis;

  std::size_t length() const noexcept { return lowpass_analysis.size(); }

  static FilterBank make(WaveletName name) {
    FilterBank bank;
    bank.name = name;
    bank.lowpass_analysis = wavelet_detail::scaling_taps(name);
    const std::size_t n = bank.lowpass_analysis.size();
    bank.highpass_analysis.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      bank.highpass_analysis[i] = sign * bank.lowpass_analysis[n - 1 - i];
    }
    bank.lowpass_synthesis.assign(bank.lowpass_analysis.rbegin(),
                                  bank.lowpass_analysis.rend());
    bank.highpass_synthesis.assign(bank.highpass_analysis.rbegin(),
                                   bank.highpass_analysis.rend());
    bank.validate();
    return bank;
  }

  /// Checks unit energy, DC gain sqrt(2), double-shift orthogonality and
  /// the mirror relations. Throws kBankMismatch on any violation.
  void validate(double tol = 1e-10) const {
    const std::size_t n = lowpass_analysis.size();
    auto fail = [&](const std::string& what) {
      throw Error(ErrorKind::kBankMismatch,
                  std::string(to_string(name)) + " taps: " + what);
    };
    if (n < 2 || n % 2 != 0 || highpass_analysis.size() != n ||
        lowpass_synthesis.size() != n || highpass_synthesis.size() != n)
      fail("inconsistent tap counts");
    const double sum = std::accumulate(lowpass_analysis.begin(),
                                       lowpass_analysis.end(), 0.0);
    if (std::abs(sum - std::sqrt(2.0)) > tol) fail("lowpass sum != sqrt(2)");
    for (std::size_t shift = 0; shift < n; shift += 2) {
      double dot = 0.0;
      for (std::size_t i = 0; i + shift < n; ++i)
        dot += lowpass_analysis[i] * lowpass_analysis[i + shift];
      if (std::abs(dot - (shift == 0 ? 1.0 : 0.0)) > tol)
        fail("lowpass not orthonormal under even shifts");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      if (highpass_analysis[i] != sign * lowpass_analysis[n - 1 - i])
        fail("highpass is not the quadrature mirror of lowpass");
      if (lowpass_synthesis[i] != lowpass_analysis[n - 1 - i] ||
          highpass_synthesis[i] != highpass_analysis[n - 1 - i])
        fail("synthesis taps are not time-reversed analysis taps");
    }
  }
};

/// Detail subbands at one scale. The first letter names the horizontal
/// (row) filter, the second the vertical one; HH is the diagonal band.
struct DetailLevel {
  ImagePlane lh;
  ImagePlane hl;
  ImagePlane hh;
};

struct WaveletPyramid {
  WaveletName bank = WaveletName::kHaar;
  int levels = 0;
  ImagePlane residual;
  std::vector<DetailLevel> details;                // index k-1 holds scale k
  std::vector<std::pair<int, int>> input_sizes;    // LL size entering scale k

  std::size_t coefficient_count() const {
    std::size_t n = residual.size();
    for (const auto& d : details) n += d.lh.size() + d.hl.size() + d.hh.size();
    return n;
  }
};

namespace wavelet_detail {

// One periodic analysis step on an even-length signal.
inline void analyze(std::span<const double> x, const FilterBank& bank,
                    std::span<double> lo, std::span<double> hi) {
  const std::size_t n = x.size();
  const std::size_t half = n / 2;
  const auto& h = bank.lowpass_analysis;
  const auto& g = bank.highpass_analysis;
  const std::size_t taps = h.size();
  for (std::size_t k = 0; k < half; ++k) {
    double a = 0.0;
    double d = 0.0;
    for (std::size_t m = 0; m < taps; ++m) {
      const double v = x[(2 * k + m) % n];
      a += h[m] * v;
      d += g[m] * v;
    }
    lo[k] = a;
    hi[k] = d;
  }
}

// Adjoint of analyze(): rebuilds the even-length signal.
inline void synthesize(std::span<const double> lo, std::span<const double> hi,
                       const FilterBank& bank, std::span<double> x) {
  const std::size_t n = x.size();
  const std::size_t half = n / 2;
  const auto& hs = bank.lowpass_synthesis;
  const auto& gs = bank.highpass_synthesis;
  const std::size_t taps = hs.size();
  std::fill(x.begin(), x.end(), 0.0);
  for (std::size_t k = 0; k < half; ++k) {
    for (std::size_t m = 0; m < taps; ++m) {
      x[(2 * k + m) % n] += hs[taps - 1 - m] * lo[k] + gs[taps - 1 - m] * hi[k];
    }
  }
}

inline int even_up(int n) { return n + (n & 1); }

struct Quad {
  ImagePlane ll, lh, hl, hh;
};

inline Quad split_level(const ImagePlane& in, const FilterBank& bank) {
  const int w = in.width();
  const int h = in.height();
  const int we = even_up(w);
  const int he = even_up(h);
  const int hw = we / 2;
  const int hh = he / 2;

  // Row pass: low half in columns [0, hw), high half in [hw, we).
  ImagePlane rows(we, he);
  parallel_for(0, he, [&](int y) {
    std::vector<double> line(we);
    const int sy = std::min(y, h - 1);
    for (int x = 0; x < we; ++x) line[x] = in.at(std::min(x, w - 1), sy);
    auto out = rows.row(y);
    analyze(line, bank, out.subspan(0, hw), out.subspan(hw, hw));
  });

  Quad q{ImagePlane(hw, hh), ImagePlane(hw, hh), ImagePlane(hw, hh),
         ImagePlane(hw, hh)};
  parallel_for(0, we, [&](int x) {
    std::vector<double> col(he), lo(hh), hi(hh);
    for (int y = 0; y < he; ++y) col[y] = rows.at(x, y);
    analyze(col, bank, lo, hi);
    const bool high_h = x >= hw;
    const int cx = high_h ? x - hw : x;
    ImagePlane& low_dst = high_h ? q.hl : q.ll;
    ImagePlane& high_dst = high_h ? q.hh : q.lh;
    for (int y = 0; y < hh; ++y) {
      low_dst.at(cx, y) = lo[y];
      high_dst.at(cx, y) = hi[y];
    }
  });
  return q;
}

inline ImagePlane merge_level(const ImagePlane& ll, const DetailLevel& d,
                              const FilterBank& bank, int w, int h) {
  const int hw = ll.width();
  const int hh = ll.height();
  const int we = 2 * hw;
  const int he = 2 * hh;

  ImagePlane rows(we, he);
  parallel_for(0, we, [&](int x) {
    std::vector<double> lo(hh), hi(hh), col(he);
    const bool high_h = x >= hw;
    const int cx = high_h ? x - hw : x;
    const ImagePlane& low_src = high_h ? d.hl : ll;
    const ImagePlane& high_src = high_h ? d.hh : d.lh;
    for (int y = 0; y < hh; ++y) {
      lo[y] = low_src.at(cx, y);
      hi[y] = high_src.at(cx, y);
    }
    synthesize(lo, hi, bank, col);
    for (int y = 0; y < he; ++y) rows.at(x, y) = col[y];
  });

  ImagePlane out(w, h);
  parallel_for(0, h, [&](int y) {
    std::vector<double> line(we);
    auto src = rows.row(y);
    synthesize(src.subspan(0, hw), src.subspan(hw, hw), bank, line);
    for (int x = 0; x < w; ++x) out.at(x, y) = line[x];
  });
  return out;
}

}  // namespace wavelet_detail

/// Forward transform to `levels` scales. Requires 2^levels <= min(W, H).
inline WaveletPyramid dwt2_forward(const ImagePlane& plane, const FilterBank& bank,
                                   int levels) {
  if (levels < 1 ||
      (1L << std::min(levels, 30)) > std::min(plane.width(), plane.height())) {
    throw Error(ErrorKind::kTooManyLevels,
                std::to_string(levels) + " levels on " +
                    std::to_string(plane.width()) + "x" +
                    std::to_string(plane.height()));
  }
  WaveletPyramid pyr;
  pyr.bank = bank.name;
  pyr.levels = levels;
  ImagePlane current = plane;
  for (int k = 1; k <= levels; ++k) {
    pyr.input_sizes.emplace_back(current.width(), current.height());
    auto q = wavelet_detail::split_level(current, bank);
    pyr.details.push_back({std::move(q.lh), std::move(q.hl), std::move(q.hh)});
    current = std::move(q.ll);
  }
  pyr.residual = std::move(current);
  return pyr;
}

inline ImagePlane dwt2_inverse(const WaveletPyramid& pyr, const FilterBank& bank) {
  auto mismatch = [](const std::string& what) {
    throw Error(ErrorKind::kBankMismatch, what);
  };
  if (pyr.bank != bank.name) mismatch("pyramid built with a different bank");
  if (pyr.levels < 1 || pyr.details.size() != static_cast<std::size_t>(pyr.levels) ||
      pyr.input_sizes.size() != pyr.details.size())
    mismatch("pyramid level bookkeeping is inconsistent");
  for (int k = 0; k < pyr.levels; ++k) {
    const auto [w, h] = pyr.input_sizes[k];
    const int sw = (w + 1) / 2;
    const int sh = (h + 1) / 2;
    const auto& d = pyr.details[k];
    for (const ImagePlane* p : {&d.lh, &d.hl, &d.hh})
      if (p->width() != sw || p->height() != sh)
        mismatch("detail subband size does not match level " + std::to_string(k + 1));
    if (k + 1 < pyr.levels &&
        (pyr.input_sizes[k + 1].first != sw || pyr.input_sizes[k + 1].second != sh))
      mismatch("level sizes do not follow the halving rule");
  }
  const auto [lw, lh] = pyr.input_sizes.back();
  if (pyr.residual.width() != (lw + 1) / 2 || pyr.residual.height() != (lh + 1) / 2)
    mismatch("residual size does not match the coarsest level");

  ImagePlane current = pyr.residual;
  for (int k = pyr.levels - 1; k >= 0; --k) {
    const auto [w, h] = pyr.input_sizes[k];
    current = wavelet_detail::merge_level(current, pyr.details[k], bank, w, h);
  }
  return current;
}

/// Median of |HH_1| / 0.6745.
inline double estimate_noise_sigma(const WaveletPyramid& pyr) {
  if (pyr.details.empty())
    throw Error(ErrorKind::kInvalidParameter, "pyramid has no detail levels");
  const auto hh = pyr.details.front().hh.samples();
  std::vector<double> mags(hh.size());
  std::transform(hh.begin(), hh.end(), mags.begin(),
                 [](double v) { return std::abs(v); });
  const std::size_t n = mags.size();
  const std::size_t mid = n / 2;
  std::nth_element(mags.begin(), mags.begin() + mid, mags.end());
  double median = mags[mid];
  if (n % 2 == 0) {
    const double lower = *std::max_element(mags.begin(), mags.begin() + mid);
    median = 0.5 * (median + lower);
  }
  return median / 0.6745;
}

/// Raw second moment of a subband (no mean removal).
inline double subband_variance(const ImagePlane& subband) {
  double acc = 0.0;
  for (double v : subband.samples()) acc += v * v;
  return acc / static_cast<double>(subband.size());
}

enum class ShrinkageKind { kModifiedBayes, kBayes, kVisu, kNormal };
enum class ThresholdMode { kSoft, kHard };

inline const char* to_string(ShrinkageKind kind) {
  switch (kind) {
    case ShrinkageKind::kModifiedBayes: return "modified_bayes";
    case ShrinkageKind::kBayes: return "bayes";
    case ShrinkageKind::kVisu: return "visu";
    case ShrinkageKind::kNormal: return "normal";
  }
  return "unknown";
}

inline const char* to_string(ThresholdMode mode) {
  return mode == ThresholdMode::kSoft ? "soft" : "hard";
}

inline constexpr ShrinkageKind kAllShrinkageKinds[] = {
    ShrinkageKind::kModifiedBayes, ShrinkageKind::kBayes,
    ShrinkageKind::kNormal, ShrinkageKind::kVisu};

inline ShrinkageKind parse_shrinkage(const std::string& text) {
  for (ShrinkageKind k : kAllShrinkageKinds)
    if (text == to_string(k)) return k;
  throw Error(ErrorKind::kInvalidParameter, "unknown shrinkage rule '" + text + "'");
}

inline ThresholdMode parse_threshold_mode(const std::string& text) {
  if (text == "soft") return ThresholdMode::kSoft;
  if (text == "hard") return ThresholdMode::kHard;
  throw Error(ErrorKind::kInvalidParameter, "unknown threshold mode '" + text + "'");
}

struct ShrinkageRule {
  ShrinkageKind kind = ShrinkageKind::kModifiedBayes;
  ThresholdMode mode = ThresholdMode::kSoft;
};

/// Statistics feeding the threshold of one detail subband.
struct NoiseStats {
  double sigma_v = 0.0;
  double sigma_y_sq = 0.0;
  double sigma_x = 0.0;
  double coefficient_count = 1.0;  // M
  int level = 1;                   // scale index j of the subband
  int total_levels = 1;            // J
  double image_pixels = 1.0;       // N^2, for the universal threshold
  double max_abs_coefficient = 0.0;

  static NoiseStats for_subband(double sigma_v, const ImagePlane& subband,
                                int level, int total_levels, double image_pixels) {
    NoiseStats s;
    s.sigma_v = sigma_v;
    s.sigma_y_sq = subband_variance(subband);
    s.sigma_x = std::sqrt(std::max(s.sigma_y_sq - sigma_v * sigma_v, 0.0));
    s.coefficient_count = static_cast<double>(subband.size());
    s.level = level;
    s.total_levels = total_levels;
    s.image_pixels = image_pixels;
    for (double v : subband.samples())
      s.max_abs_coefficient = std::max(s.max_abs_coefficient, std::abs(v));
    return s;
  }
};

inline double compute_threshold(const ShrinkageRule& rule, const NoiseStats& s) {
  const double noise_var = s.sigma_v * s.sigma_v;
  switch (rule.kind) {
    case ShrinkageKind::kModifiedBayes: {
      if (!(noise_var < s.sigma_y_sq) || s.sigma_x <= 0.0)
        return s.max_abs_coefficient;
      const double beta = std::sqrt(std::log(s.coefficient_count) / (2.0 * s.level));
      return beta * noise_var / s.sigma_x;
    }
    case ShrinkageKind::kBayes:
      if (!(noise_var < s.sigma_y_sq) || s.sigma_x <= 0.0)
        return s.max_abs_coefficient;
      return noise_var / s.sigma_x;
    case ShrinkageKind::kVisu:
      return s.sigma_v * std::sqrt(2.0 * std::log(s.image_pixels));
    case ShrinkageKind::kNormal: {
      const double sigma_y = std::sqrt(s.sigma_y_sq);
      if (sigma_y <= 0.0) return s.max_abs_coefficient;
      const double beta =
          std::sqrt(std::log(s.coefficient_count / static_cast<double>(s.total_levels)));
      return beta * noise_var / sigma_y;
    }
  }
  return 0.0;
}

inline double shrink(double w, double t, ThresholdMode mode) {
  if (!(std::abs(w) > t)) return 0.0;
  if (mode == ThresholdMode::kHard) return w;
  return w > 0.0 ? w - t : w + t;
}

inline ImagePlane apply_threshold(const ImagePlane& subband, double t,
                                  ThresholdMode mode) {
  if (!(t >= 0.0))
    throw Error(ErrorKind::kInvalidParameter, "threshold must be non-negative");
  ImagePlane out = subband;
  for (double& v : out.samples()) v = shrink(v, t, mode);
  return out;
}

/// Thresholds every detail subband of a pyramid in place. The noise level
/// is estimated once from HH_1 and shared by all subbands.
inline void shrink_pyramid(WaveletPyramid& pyr, const ShrinkageRule& rule,
                           double image_pixels) {
  const double sigma_v = estimate_noise_sigma(pyr);
  for (int k = 1; k <= pyr.levels; ++k) {
    auto& d = pyr.details[k - 1];
    for (ImagePlane* band : {&d.lh, &d.hl, &d.hh}) {
      const auto stats =
          NoiseStats::for_subband(sigma_v, *band, k, pyr.levels, image_pixels);
      *band = apply_threshold(*band, compute_threshold(rule, stats), rule.mode);
    }
  }
}

/// Forward transform, shrinkage, inverse. Unclamped.
inline ImagePlane denoise_plane(const ImagePlane& plane, const FilterBank& bank,
                                const ShrinkageRule& rule, int levels) {
  WaveletPyramid pyr = dwt2_forward(plane, bank, levels);
  shrink_pyramid(pyr, rule, static_cast<double>(plane.size()));
  return dwt2_inverse(pyr, bank);
}

/// Per-channel wavelet denoising of an sRGB-scaled image, clamped to
/// [0, 255].
inline ColorImage denoise(const ColorImage& img, const FilterBank& bank,
                          const ShrinkageRule& rule, int levels) {
  require_space(img, ColorSpace::kSrgb8BitScaled, "denoise");
  ColorImage out(img.width(), img.height(), img.space());
  for (int c = 0; c < 3; ++c)
    out.plane(c) = denoise_plane(img.plane(c), bank, rule, levels);
  clamp_samples(out, 0.0, 255.0);
  return out;
}

/// Writes every subband as an 8-bit PGM, each linearly mapped from its own
/// [min, max] to [0, 255]. Returns the written paths.
inline std::vector<std::string> dump_pyramid(const WaveletPyramid& pyr,
                                             const std::string& dir,
                                             const std::string& prefix) {
  std::vector<std::string> written;
  auto emit = [&](const ImagePlane& band, const std::string& tag) {
    const auto [lo, hi] = std::minmax_element(band.samples().begin(),
                                              band.samples().end());
    const double range = *hi - *lo;
    ImagePlane scaled = band;
    for (double& v : scaled.samples())
      v = range > 0.0 ? 255.0 * (v - *lo) / range : 0.0;
    const std::string path =
        (std::filesystem::path(dir) / (prefix + "_" + tag + ".pgm")).string();
    save_plane(scaled, path);
    written.push_back(path);
  };
  for (int k = 1; k <= pyr.levels; ++k) {
    const auto& d = pyr.details[k - 1];
    emit(d.lh, "LH" + std::to_string(k));
    emit(d.hl, "HL" + std::to_string(k));
    emit(d.hh, "HH" + std::to_string(k));
  }
  emit(pyr.residual, "LL" + std::to_string(pyr.levels));
  return written;
}

}  // namespace aquaclean

#endif  // AQUACLEAN_WAVELET_HPP_
