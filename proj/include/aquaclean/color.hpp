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

#ifndef AQUACLEAN_COLOR_HPP_
#define AQUACLEAN_COLOR_HPP_

#include <algorithm>
#include <array>
#include <cmath>

#include "aquaclean/image.hpp"
#include "aquaclean/parallel.hpp"

namespace aquaclean {

namespace color_detail {

using Mat3 = std::array<std::array<double, 3>, 3>;

// Linear sRGB -> XYZ, derived from the Rec. 709 primaries and the D65 white
// point (x = 0.3127, y = 0.3290).
inline constexpr Mat3 kRgbToXyz = {{
    {0.4123907992659594, 0.35758433938387796, 0.1804807884018343},
    {0.2126390058715103, 0.7151686787677559, 0.07219231536073371},
    {0.01933081871559182, 0.11919477979462596, 0.9505321522496607},
}};

inline constexpr Mat3 kXyzToRgb = {{
    {3.2409699419045213, -1.5373831775700932, -0.4986107602930032},
    {-0.9692436362808794, 1.8759675015077202, 0.04155505740717556},
    {0.05563007969699359, -0.20397695888897646, 1.0569715142428784},
}};

// Reference white, the row sums of kRgbToXyz.
inline constexpr std::array<double, 3> kWhite = {0.9504559270516716, 1.0,
                                                 1.0890577507598784};

inline constexpr double kDelta = 6.0 / 29.0;

inline double srgb_decode(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

inline double srgb_encode(double c) {
  return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

inline double lab_f(double t) {
  return t > kDelta * kDelta * kDelta ? std::cbrt(t)
                                      : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

inline double lab_f_inv(double t) {
  return t > kDelta ? t * t * t : 3.0 * kDelta * kDelta * (t - 4.0 / 29.0);
}

inline std::array<double, 3> mat_vec(const Mat3& m, const std::array<double, 3>& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
          m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
          m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2]};
}

}  // namespace color_detail

/// sRGB triple on the 0..255 scale to CIE L*a*b* (D65).
inline std::array<double, 3> srgb_pixel_to_lab(std::array<double, 3> rgb) {
  using namespace color_detail;
  std::array<double, 3> lin;
  for (int c = 0; c < 3; ++c) lin[c] = srgb_decode(rgb[c] / 255.0);
  auto xyz = mat_vec(kRgbToXyz, lin);
  const double fx = lab_f(xyz[0] / kWhite[0]);
  const double fy = lab_f(xyz[1] / kWhite[1]);
  const double fz = lab_f(xyz[2] / kWhite[2]);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

/// CIE L*a*b* to sRGB on the 0..255 scale, clamped to the gamut cube.
inline std::array<double, 3> lab_pixel_to_srgb(std::array<double, 3> lab) {
  using namespace color_detail;
  const double fy = (lab[0] + 16.0) / 116.0;
  const double fx = fy + lab[1] / 500.0;
  const double fz = fy - lab[2] / 200.0;
  std::array<double, 3> xyz = {kWhite[0] * lab_f_inv(fx),
                               kWhite[1] * lab_f_inv(fy),
                               kWhite[2] * lab_f_inv(fz)};
  auto lin = mat_vec(kXyzToRgb, xyz);
  std::array<double, 3> rgb;
  for (int c = 0; c < 3; ++c)
    rgb[c] = 255.0 * srgb_encode(std::clamp(lin[c], 0.0, 1.0));
  return rgb;
}

namespace color_detail {
template <typename PixelFn>
ColorImage convert(const ColorImage& img, ColorSpace target, PixelFn fn) {
  ColorImage out(img.width(), img.height(), target);
  parallel_for(0, img.height(), [&](int y) {
    for (int x = 0; x < img.width(); ++x) {
      auto v = fn({img.plane(0).at(x, y), img.plane(1).at(x, y),
                   img.plane(2).at(x, y)});
      for (int c = 0; c < 3; ++c) out.plane(c).at(x, y) = v[c];
    }
  });
  return out;
}
}  // namespace color_detail

inline ColorImage srgb_to_lab(const ColorImage& img) {
  require_space(img, ColorSpace::kSrgb8BitScaled, "srgb_to_lab");
  return color_detail::convert(img, ColorSpace::kCieLab, srgb_pixel_to_lab);
}

inline ColorImage lab_to_srgb(const ColorImage& img) {
  require_space(img, ColorSpace::kCieLab, "lab_to_srgb");
  return color_detail::convert(img, ColorSpace::kSrgb8BitScaled,
                               lab_pixel_to_srgb);
}

}  // namespace aquaclean

#endif  // AQUACLEAN_COLOR_HPP_
