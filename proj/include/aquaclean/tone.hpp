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

#ifndef AQUACLEAN_TONE_HPP_
#define AQUACLEAN_TONE_HPP_

#include <algorithm>
#include <array>
#include <string>

#include "aquaclean/image.hpp"

namespace aquaclean {

/// Channel ranges narrower than this (on the [0,1] scale) count as constant.
inline constexpr double kDegenerateRange = 1e-9;

struct StretchStats {
  double min_i = 0.0;
  double max_i = 0.0;

  bool degenerate() const { return max_i - min_i <= kDegenerateRange; }
};

inline StretchStats stretch_stats(const ImagePlane& plane, double peak) {
  const auto [lo, hi] =
      std::minmax_element(plane.samples().begin(), plane.samples().end());
  return {*lo / peak, *hi / peak};
}

/// Linear min/max stretch of one plane given on [0, peak]; returns [0, peak].
/// A constant plane maps to peak / 2.
inline ImagePlane stretch_plane(const ImagePlane& plane, double peak) {
  const StretchStats s = stretch_stats(plane, peak);
  ImagePlane out(plane.width(), plane.height());
  auto src = plane.samples();
  auto dst = out.samples();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    double v = 0.5;
    if (!s.degenerate())
      v = std::clamp((src[i] / peak - s.min_i) / (s.max_i - s.min_i), 0.0, 1.0);
    dst[i] = v * peak;
  }
  return out;
}

inline ColorImage contrast_stretch(const ColorImage& img) {
  require_space(img, ColorSpace::kSrgb8BitScaled, "contrast_stretch");
  ColorImage out(img.width(), img.height(), img.space());
  for (int c = 0; c < 3; ++c)
    out.plane(c) = stretch_plane(img.plane(c), img.nominal_peak());
  return out;
}

struct ColorMeanStats {
  std::array<double, 3> means_before{};
  std::array<double, 3> gains{1.0, 1.0, 1.0};
  double target = 0.0;
  double clamped_fraction = 0.0;  // share of samples altered by the clamp
};

/// Scales each channel so that its mean equals the mean of the three
/// channel means. A zero-mean channel keeps gain 1. No clamping.
inline ColorImage equalize_color_means_unclamped(const ColorImage& img,
                                                 ColorMeanStats* stats = nullptr) {
  require_space(img, ColorSpace::kSrgb8BitScaled, "equalize_color_means");
  ColorMeanStats s;
  for (int c = 0; c < 3; ++c) s.means_before[c] = mean(img.plane(c));
  s.target = (s.means_before[0] + s.means_before[1] + s.means_before[2]) / 3.0;
  ColorImage out = img;
  for (int c = 0; c < 3; ++c) {
    if (s.means_before[c] > 0.0) s.gains[c] = s.target / s.means_before[c];
    for (double& v : out.plane(c).samples()) v *= s.gains[c];
  }
  if (stats) *stats = s;
  return out;
}

inline ColorImage equalize_color_means(const ColorImage& img,
                                       ColorMeanStats* stats = nullptr) {
  ColorMeanStats s;
  ColorImage out = equalize_color_means_unclamped(img, &s);
  std::size_t clipped = 0;
  for (auto& plane : out.planes()) {
    for (double& v : plane.samples()) {
      const double c = std::clamp(v, 0.0, 255.0);
      clipped += c != v;
      v = c;
    }
  }
  s.clamped_fraction =
      static_cast<double>(clipped) / (3.0 * static_cast<double>(img.pixel_count()));
  if (stats) *stats = s;
  return out;
}

enum class ToneOrder { kEqualizeThenStretch, kStretchThenEqualize };

inline const char* to_string(ToneOrder order) {
  return order == ToneOrder::kEqualizeThenStretch ? "equalize_then_stretch"
                                                  : "stretch_then_equalize";
}

inline ToneOrder parse_tone_order(const std::string& text) {
  if (text == "equalize_then_stretch") return ToneOrder::kEqualizeThenStretch;
  if (text == "stretch_then_equalize") return ToneOrder::kStretchThenEqualize;
  throw Error(ErrorKind::kInvalidParameter, "unknown tone order '" + text + "'");
}

/// Color-mean equalization and contrast stretching in the configured order.
inline ColorImage apply_tone(const ColorImage& img, ToneOrder order) {
  if (order == ToneOrder::kEqualizeThenStretch)
    return contrast_stretch(equalize_color_means(img));
  return equalize_color_means(contrast_stretch(img));
}

}  // namespace aquaclean

#endif  // AQUACLEAN_TONE_HPP_
