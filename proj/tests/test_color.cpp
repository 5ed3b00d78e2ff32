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


#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "test_util.hpp"

namespace aquaclean {
namespace {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

// Independent colorimetry chain: the RGB->XYZ matrix is rebuilt here from the
// Rec. 709 chromaticities and the D65 white point by Cramer's rule.
Vec3 xy_to_xyz(double x, double y) { return {x / y, 1.0, (1.0 - x - y) / y}; }

double det(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 oracle_rgb_to_xyz() {
  const Vec3 r = xy_to_xyz(0.64, 0.33), g = xy_to_xyz(0.30, 0.60), b = xy_to_xyz(0.15, 0.06);
  const Vec3 w = xy_to_xyz(0.3127, 0.3290);
  const Mat3 p = {{{r[0], g[0], b[0]}, {r[1], g[1], b[1]}, {r[2], g[2], b[2]}}};
  const double d = det(p);
  Vec3 s;
  for (int k = 0; k < 3; ++k) {
    Mat3 q = p;
    for (int i = 0; i < 3; ++i) q[i][k] = w[i];
    s[k] = det(q) / d;
  }
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) m[i][k] = p[i][k] * s[k];
  return m;
}

Vec3 oracle_lab(Vec3 rgb255) {
  const Mat3 m = oracle_rgb_to_xyz();
  Vec3 lin;
  for (int c = 0; c < 3; ++c) {
    const double v = rgb255[c] / 255.0;
    lin[c] = v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
  }
  Vec3 xyz{}, white{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      xyz[i] += m[i][k] * lin[k];
      white[i] += m[i][k];
    }
  auto f = [](double t) {
    const double e = 216.0 / 24389.0, kappa = 24389.0 / 27.0;
    return t > e ? std::cbrt(t) : (kappa * t + 16.0) / 116.0;
  };
  const double fx = f(xyz[0] / white[0]), fy = f(xyz[1] / white[1]), fz = f(xyz[2] / white[2]);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

TEST(Lab, WhiteAndBlack) {
  const auto w = srgb_pixel_to_lab({255, 255, 255});
  EXPECT_NEAR(w[0], 100.0, 1e-9);
  EXPECT_LT(std::abs(w[1]), 0.01);
  EXPECT_LT(std::abs(w[2]), 0.01);
  const auto k = srgb_pixel_to_lab({0, 0, 0});
  EXPECT_NEAR(k[0], 0.0, 1e-12);
  EXPECT_NEAR(k[1], 0.0, 1e-12);
  EXPECT_NEAR(k[2], 0.0, 1e-12);
}

TEST(Lab, PrimariesMatchOracleToThreeDecimals) {
  for (Vec3 rgb : {Vec3{255, 0, 0}, Vec3{0, 255, 0}, Vec3{0, 0, 255}, Vec3{12, 200, 77},
                   Vec3{3, 4, 5}}) {
    const auto got = srgb_pixel_to_lab(rgb);
    const auto want = oracle_lab(rgb);
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(got[c], want[c], 5e-4) << rgb[0] << "," << rgb[1];
  }
  const auto red = srgb_pixel_to_lab({255, 0, 0});
  EXPECT_NEAR(red[0], 53.2371, 5e-4);
  EXPECT_NEAR(red[1], 80.0901, 5e-4);
  EXPECT_NEAR(red[2], 67.2033, 5e-4);
}

TEST(Lab, InverseOfWhiteAndBlack) {
  const auto w = lab_pixel_to_srgb({100, 0, 0});
  for (double v : w) EXPECT_NEAR(v, 255.0, 1.0);
  const auto k = lab_pixel_to_srgb({0, 0, 0});
  for (double v : k) EXPECT_NEAR(v, 0.0, 1e-9);
}

TEST(Lab, LatticeRoundTrip) {
  double worst = 0.0;
  for (int r = 0; r < 6; ++r)
    for (int g = 0; g < 6; ++g)
      for (int b = 0; b < 6; ++b) {
        const Vec3 rgb = {51.0 * r, 51.0 * g, 51.0 * b};
        const auto back = lab_pixel_to_srgb(srgb_pixel_to_lab(rgb));
        for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(back[c] - rgb[c]));
      }
  EXPECT_LT(worst, 0.5);
}

TEST(Lab, ImageConversionChecksSpace) {
  ColorImage lab(2, 2, ColorSpace::kCieLab);
  EXPECT_THROW(srgb_to_lab(lab), Error);
  ColorImage rgb(2, 2, ColorSpace::kSrgb8BitScaled, 40.0);
  EXPECT_THROW(lab_to_srgb(rgb), Error);
  const ColorImage converted = srgb_to_lab(rgb);
  EXPECT_EQ(converted.space(), ColorSpace::kCieLab);
  EXPECT_LT(testing::max_abs_diff(lab_to_srgb(converted), rgb), 1e-9);
}

}  // namespace
}  // namespace aquaclean
