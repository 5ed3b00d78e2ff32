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

#include <cmath>
#include <numbers>

#include "test_util.hpp"

namespace aquaclean {
namespace {

using testing::max_abs_diff;
using testing::random_plane;

double energy(const ImagePlane& p) {
  double e = 0.0;
  for (double v : p.samples()) e += v * v;
  return e;
}

double energy(const WaveletPyramid& pyr) {
  double e = energy(pyr.residual);
  for (const auto& d : pyr.details) e += energy(d.lh) + energy(d.hl) + energy(d.hh);
  return e;
}

TEST(FilterBank, AllBanksValidate) {
  for (WaveletName n : kAllWavelets) {
    const FilterBank b = FilterBank::make(n);
    EXPECT_NO_THROW(b.validate());
    double sum = 0.0;
    for (double t : b.lowpass_analysis) sum += t;
    EXPECT_NEAR(sum, std::numbers::sqrt2, 1e-10) << to_string(n);
    EXPECT_EQ(parse_wavelet(to_string(n)), n);
  }
  EXPECT_EQ(FilterBank::make(WaveletName::kHaar).length(), 2u);
  EXPECT_EQ(FilterBank::make(WaveletName::kDb4).length(), 8u);
  EXPECT_EQ(FilterBank::make(WaveletName::kSym4).length(), 8u);
  EXPECT_EQ(FilterBank::make(WaveletName::kCoif4).length(), 24u);
  EXPECT_THROW(parse_wavelet("db5"), Error);
}

TEST(FilterBank, CorruptedTapsAreRejected) {
  FilterBank b = FilterBank::make(WaveletName::kDb4);
  b.lowpass_analysis[2] += 1e-3;
  try {
    b.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBankMismatch);
  }
}

TEST(Dwt2, HaarConstant) {
  const ImagePlane p(8, 8, 5.0);
  const auto pyr = dwt2_forward(p, FilterBank::make(WaveletName::kHaar), 1);
  for (double v : pyr.residual.samples()) EXPECT_NEAR(v, 10.0, 1e-12);
  for (const ImagePlane* b : {&pyr.details[0].lh, &pyr.details[0].hl, &pyr.details[0].hh})
    for (double v : b->samples()) EXPECT_EQ(v, 0.0);
}

TEST(Dwt2, HaarFourByFourByHand) {
  const ImagePlane p(4, 4, std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13,
                                               14, 15, 16});
  const auto pyr = dwt2_forward(p, FilterBank::make(WaveletName::kHaar), 1);
  const auto& d = pyr.details[0];
  for (int by = 0; by < 2; ++by)
    for (int bx = 0; bx < 2; ++bx) {
      const double a = p.at(2 * bx, 2 * by), b = p.at(2 * bx + 1, 2 * by);
      const double c = p.at(2 * bx, 2 * by + 1), e = p.at(2 * bx + 1, 2 * by + 1);
      EXPECT_NEAR(pyr.residual.at(bx, by), (a + b + c + e) / 2, 1e-12);
      EXPECT_NEAR(d.lh.at(bx, by), ((a + b) - (c + e)) / 2, 1e-12);
      EXPECT_NEAR(d.hl.at(bx, by), ((a - b) + (c - e)) / 2, 1e-12);
      EXPECT_NEAR(d.hh.at(bx, by), ((a - b) - (c - e)) / 2, 1e-12);
    }
}

TEST(Dwt2, EnergyIsConserved) {
  const ImagePlane p = random_plane(16, 16, 9, -1, 1);
  for (WaveletName n : kAllWavelets) {
    for (int j = 1; j <= 3; ++j) {
      const auto pyr = dwt2_forward(p, FilterBank::make(n), j);
      EXPECT_NEAR(energy(pyr), energy(p), 1e-9 * energy(p)) << to_string(n) << " J=" << j;
    }
  }
}

TEST(Dwt2, PerfectReconstruction) {
  for (auto [w, h] : {std::pair{32, 32}, std::pair{33, 45}, std::pair{17, 16}}) {
    const ImagePlane p = random_plane(w, h, w * 100 + h);
    for (WaveletName n : kAllWavelets) {
      const FilterBank bank = FilterBank::make(n);
      for (int j = 1; j <= 4; ++j) {
        if ((1 << j) > std::min(w, h)) continue;
        const auto pyr = dwt2_forward(p, bank, j);
        EXPECT_LT(max_abs_diff(dwt2_inverse(pyr, bank), p), 1e-8)
            << to_string(n) << " " << w << "x" << h << " J=" << j;
      }
    }
  }
}

TEST(Dwt2, OddSizesKeepBookkeeping) {
  const auto pyr = dwt2_forward(random_plane(33, 45, 1), FilterBank::make(WaveletName::kSym4), 3);
  ASSERT_EQ(pyr.input_sizes.size(), 3u);
  EXPECT_EQ(pyr.input_sizes[1], (std::pair{17, 23}));
  EXPECT_EQ(pyr.input_sizes[2], (std::pair{9, 12}));
  EXPECT_EQ(pyr.residual.width(), 5);
  EXPECT_EQ(pyr.residual.height(), 6);
}

TEST(Dwt2, ZeroDetailsOfConstantReconstructConstant) {
  const FilterBank bank = FilterBank::make(WaveletName::kCoif4);
  auto pyr = dwt2_forward(ImagePlane(32, 32, 77.0), bank, 3);
  for (auto& d : pyr.details)
    for (ImagePlane* b : {&d.lh, &d.hl, &d.hh})
      for (double& v : b->samples()) v = 0.0;
  for (const ImagePlane out_plane = dwt2_inverse(pyr, bank);
       double v : out_plane.samples())
    EXPECT_NEAR(v, 77.0, 1e-10);
}

TEST(Dwt2, Errors) {
  const FilterBank haar = FilterBank::make(WaveletName::kHaar);
  try {
    dwt2_forward(ImagePlane(8, 20), haar, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kTooManyLevels);
  }
  EXPECT_THROW(dwt2_forward(ImagePlane(8, 8), haar, 0), Error);
  const auto pyr = dwt2_forward(ImagePlane(8, 8), haar, 2);
  try {
    dwt2_inverse(pyr, FilterBank::make(WaveletName::kDb4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBankMismatch);
  }
  auto broken = pyr;
  broken.details[0].hh = ImagePlane(3, 3);
  EXPECT_THROW(dwt2_inverse(broken, haar), Error);
}

WaveletPyramid pyramid_with_hh(const ImagePlane& hh) {
  WaveletPyramid pyr;
  pyr.levels = 1;
  pyr.details.push_back({hh, hh, hh});
  pyr.residual = hh;
  pyr.input_sizes.emplace_back(2 * hh.width(), 2 * hh.height());
  return pyr;
}

TEST(NoiseSigma, DirectSubstitution) {
  EXPECT_NEAR(estimate_noise_sigma(pyramid_with_hh(ImagePlane(4, 4, 0.6745))), 1.0, 1e-12);
  EXPECT_NEAR(estimate_noise_sigma(pyramid_with_hh(ImagePlane(4, 4, -0.6745))), 1.0, 1e-12);
  EXPECT_EQ(estimate_noise_sigma(pyramid_with_hh(ImagePlane(4, 4, 0.0))), 0.0);
  // Even count: mean of the two middle magnitudes.
  const ImagePlane four(2, 2, std::vector<double>{1, -2, 3, 4});
  EXPECT_NEAR(estimate_noise_sigma(pyramid_with_hh(four)), 2.5 / 0.6745, 1e-12);
}

TEST(NoiseSigma, GaussianNoiseOnUnitScale) {
  const double sigma = 10.0 / 255.0;
  ImagePlane p(256, 256);
  FixtureRng rng(42);
  add_gaussian_noise(p, sigma, rng);
  const double est =
      estimate_noise_sigma(dwt2_forward(p, FilterBank::make(WaveletName::kCoif4), 1));
  EXPECT_NEAR(est, sigma, 0.05 * sigma);
}

TEST(SubbandVariance, Examples) {
  EXPECT_DOUBLE_EQ(subband_variance(ImagePlane(2, 1, std::vector<double>{3, -4})), 12.5);
  EXPECT_DOUBLE_EQ(subband_variance(ImagePlane(3, 3)), 0.0);
  ImagePlane p(400, 250);
  FixtureRng rng(8);
  add_gaussian_noise(p, 2.0, rng);
  EXPECT_NEAR(subband_variance(p), 4.0, 0.03 * 4.0);
}

NoiseStats stats(double sigma_v, double sigma_y_sq, double m, int level) {
  NoiseStats s;
  s.sigma_v = sigma_v;
  s.sigma_y_sq = sigma_y_sq;
  s.sigma_x = std::sqrt(std::max(sigma_y_sq - sigma_v * sigma_v, 0.0));
  s.coefficient_count = m;
  s.level = level;
  s.total_levels = 4;
  s.image_pixels = 256.0 * 256.0;
  s.max_abs_coefficient = 9.0;
  return s;
}

TEST(Threshold, ModifiedBayesHandValue) {
  const ShrinkageRule mb{ShrinkageKind::kModifiedBayes, ThresholdMode::kSoft};
  EXPECT_NEAR(compute_threshold(mb, stats(1.0, 5.0, std::exp(2.0), 1)), 0.5, 1e-12);
  // beta shrinks with the level index.
  EXPECT_NEAR(compute_threshold(mb, stats(1.0, 5.0, std::exp(2.0), 4)), 0.25, 1e-12);
}

TEST(Threshold, NoiseDominatedSubbandFallsBackToMax) {
  const ShrinkageRule mb{ShrinkageKind::kModifiedBayes, ThresholdMode::kSoft};
  const NoiseStats s = stats(2.0, 3.0, 100, 1);
  const double t = compute_threshold(mb, s);
  EXPECT_EQ(t, 9.0);
  const ImagePlane band(3, 3, std::vector<double>{9, -9, 1, 2, -3, 4, 0, 8.5, -0.1});
  for (ThresholdMode mode : {ThresholdMode::kSoft, ThresholdMode::kHard})
    for (const ImagePlane out_plane = apply_threshold(band, t, mode);
         double v : out_plane.samples())
      EXPECT_EQ(v, 0.0);
}

TEST(Threshold, OtherRules) {
  EXPECT_NEAR(compute_threshold({ShrinkageKind::kBayes, ThresholdMode::kSoft},
                                stats(1.0, 5.0, 100, 1)),
              0.5, 1e-12);
  EXPECT_NEAR(compute_threshold({ShrinkageKind::kVisu, ThresholdMode::kSoft},
                                stats(3.0, 5.0, 100, 1)),
              3.0 * std::sqrt(2.0 * std::log(65536.0)), 1e-12);
  // NormalShrink: sqrt(ln(M / J)) * sigma_v^2 / sigma_y.
  EXPECT_NEAR(compute_threshold({ShrinkageKind::kNormal, ThresholdMode::kSoft},
                                stats(1.0, 4.0, 4.0 * std::exp(1.0), 2)),
              0.5, 1e-12);
}

TEST(Shrink, SoftAndHard) {
  EXPECT_EQ(shrink(5, 2, ThresholdMode::kSoft), 3);
  EXPECT_EQ(shrink(-5, 2, ThresholdMode::kSoft), -3);
  EXPECT_EQ(shrink(1, 2, ThresholdMode::kSoft), 0);
  EXPECT_EQ(shrink(5, 2, ThresholdMode::kHard), 5);
  EXPECT_EQ(shrink(1.9, 2, ThresholdMode::kHard), 0);
  const ImagePlane band = random_plane(7, 5, 3, -10, 10);
  EXPECT_EQ(apply_threshold(band, 0.0, ThresholdMode::kSoft), band);
  EXPECT_EQ(apply_threshold(band, 0.0, ThresholdMode::kHard), band);
  EXPECT_THROW(apply_threshold(band, -1.0, ThresholdMode::kSoft), Error);
}

TEST(Shrink, SoftNeverGrowsOrFlipsSign) {
  FixtureRng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double w = rng.uniform(-50, 50), t = rng.uniform(0, 20);
    const double s = shrink(w, t, ThresholdMode::kSoft);
    EXPECT_LE(std::abs(s), std::abs(w));
    EXPECT_GE(s * w, 0.0);
    EXPECT_NEAR(std::abs(w - s), std::min(std::abs(w), t), 1e-12);
  }
}

TEST(Shrinkage, NamesRoundTrip) {
  for (ShrinkageKind k : kAllShrinkageKinds) EXPECT_EQ(parse_shrinkage(to_string(k)), k);
  EXPECT_EQ(parse_threshold_mode("hard"), ThresholdMode::kHard);
  EXPECT_THROW(parse_shrinkage("sure"), Error);
}

TEST(Denoise, ConstantImageIsUnchanged) {
  const ColorImage img(64, 64, ColorSpace::kSrgb8BitScaled, 93.0);
  for (WaveletName n : kAllWavelets) {
    const ColorImage out = denoise(img, FilterBank::make(n), {}, 4);
    EXPECT_LT(testing::max_abs_diff(out, img), 1e-9) << to_string(n);
  }
}

TEST(Denoise, ImprovesPsnrOnSmoothScene) {
  ColorImage clean(256, 256, ColorSpace::kSrgb8BitScaled);
  for (int y = 0; y < 256; ++y)
    for (int x = 0; x < 256; ++x)
      for (int c = 0; c < 3; ++c)
        clean.plane(c).at(x, y) = 128 + 50 * std::sin(x / 23.0 + c) * std::cos(y / 31.0);
  ColorImage noisy = clean;
  FixtureRng rng(99);
  add_gaussian_noise(noisy, 15.0, rng);
  clamp_samples(noisy, 0, 255);
  const ColorImage out = denoise(noisy, FilterBank::make(WaveletName::kCoif4),
                                 {ShrinkageKind::kModifiedBayes, ThresholdMode::kSoft}, 4);
  EXPECT_GE(psnr(out, clean), psnr(noisy, clean) + 2.0);
}

TEST(DumpPyramid, WritesOneFilePerSubband) {
  const auto dir = testing::scratch_dir("wavelet");
  const auto pyr = dwt2_forward(random_plane(16, 16, 2), FilterBank::make(WaveletName::kHaar), 2);
  const auto files = dump_pyramid(pyr, dir.string(), "p");
  EXPECT_EQ(files.size(), 7u);
  for (const auto& f : files) EXPECT_TRUE(std::filesystem::exists(f)) << f;
}

}  // namespace
}  // namespace aquaclean
