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

#include "test_util.hpp"

namespace aquaclean {
namespace {

using testing::max_abs_diff;

TEST(Mse, Examples) {
  const ColorImage a = testing::random_image(8, 8, 1, ColorSpace::kSrgb8BitScaled);
  EXPECT_EQ(mse(a, a), 0.0);
  EXPECT_TRUE(std::isinf(psnr(a, a)));

  ColorImage p(1, 1, ColorSpace::kSrgb8BitScaled, 10.0), q = p;
  q.plane(1).at(0, 0) = 13.0;
  EXPECT_DOUBLE_EQ(mse(p, q), 3.0);

  const ColorImage b = testing::random_image(8, 8, 2, ColorSpace::kSrgb8BitScaled);
  double acc = 0.0;
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < 8; ++y)
      for (int x = 0; x < 8; ++x) {
        const double d = a.plane(c).at(x, y) - b.plane(c).at(x, y);
        acc += d * d;
      }
  EXPECT_NEAR(mse(a, b), acc / (3 * 64), 1e-12);
}

TEST(Mse, ShapeAndSpaceMustMatch) {
  const ColorImage a(4, 4, ColorSpace::kSrgb8BitScaled);
  try {
    mse(a, ColorImage(4, 5, ColorSpace::kSrgb8BitScaled));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimensionMismatch);
  }
  EXPECT_THROW(mse(a, ColorImage(4, 4, ColorSpace::kCieLab)), Error);
}

TEST(Psnr, ReferenceValues) {
  EXPECT_NEAR(psnr_from_mse(0.0242), 64.2905, 0.05);
  EXPECT_NEAR(psnr_from_mse(0.0043), 71.7861, 0.05);
  EXPECT_NEAR(psnr_from_mse(255.0 * 255.0), 0.0, 1e-12);
  EXPECT_NEAR(psnr_from_mse(1.0, 1.0), 0.0, 1e-12);
}

TEST(Gradient, ConstantIsZero) {
  for (const ImagePlane out_plane = gradient_magnitude(ImagePlane(7, 5, 99.0));
       double v : out_plane.samples())
    EXPECT_EQ(v, 0.0);
}

TEST(Gradient, VerticalStep) {
  ImagePlane p(8, 6);
  for (int y = 0; y < 6; ++y)
    for (int x = 4; x < 8; ++x) p.at(x, y) = 255.0;
  const ImagePlane g = gradient_magnitude(p);
  for (int y = 0; y < 6; ++y) {
    EXPECT_DOUBLE_EQ(g.at(3, y), 1020.0);
    EXPECT_DOUBLE_EQ(g.at(4, y), 1020.0);
    EXPECT_DOUBLE_EQ(g.at(1, y), 0.0);
    EXPECT_DOUBLE_EQ(g.at(6, y), 0.0);
  }
}

TEST(Gradient, TransposeEquivariant) {
  const ImagePlane p = testing::random_plane(11, 7, 3);
  EXPECT_LT(max_abs_diff(gradient_magnitude(transpose(p)), transpose(gradient_magnitude(p))),
            1e-9);
}

TEST(Histogram, ZeroPlaneAndTotals) {
  const Histogram h = gradient_histogram(ImagePlane(5, 4), 10);
  EXPECT_EQ(h.counts[0], 20);
  for (int i = 1; i < 10; ++i) EXPECT_EQ(h.counts[i], 0);
  EXPECT_EQ(h.bin_edges.size(), 11u);

  const ImagePlane g = gradient_magnitude(testing::random_plane(30, 20, 6));
  for (int bins : {2, 7, 64}) {
    const Histogram hg = gradient_histogram(g, bins);
    std::int64_t sum = 0;
    for (auto c : hg.counts) sum += c;
    EXPECT_EQ(sum, 600);
    EXPECT_EQ(hg.total, 600);
  }
  EXPECT_THROW(gradient_histogram(g, 1), Error);
}

TEST(Histogram, SharedUpperBoundAndCsv) {
  const ImagePlane p(2, 1, std::vector<double>{1.0, 3.0});
  const Histogram h = gradient_histogram(p, 4, 4.0);
  EXPECT_EQ(h.counts, (std::vector<std::int64_t>{0, 1, 0, 1}));
  const auto dir = testing::scratch_dir("metrics");
  write_histogram_csv(h, (dir / "h.csv").string());
  EXPECT_EQ(testing::read_file(dir / "h.csv"),
            "bin_low,bin_high,count\n0,1,0\n1,2,1\n2,3,0\n3,4,1\n");
}

TEST(EdgeMap, ConstantHasNoEdges) {
  const ColorImage img(20, 20, ColorSpace::kSrgb8BitScaled, 80.0);
  for (const ImagePlane out_plane = edge_map(img, 40, 100);
       double v : out_plane.samples())
    EXPECT_EQ(v, 0.0);
}

TEST(EdgeMap, StepGivesOneThinColumn) {
  const ColorImage img = make_step_image(32, 24, 40.0, 200.0, 0.0, 1);
  const ImagePlane e = edge_map(img, 40, 100);
  std::vector<int> per_column(32, 0);
  for (int y = 0; y < 24; ++y)
    for (int x = 0; x < 32; ++x)
      if (e.at(x, y) > 0) ++per_column[x];
  int columns = 0;
  for (int x = 0; x < 32; ++x) {
    if (per_column[x] == 0) continue;
    ++columns;
    EXPECT_EQ(per_column[x], 24);
    EXPECT_TRUE(x == 15 || x == 16) << x;
  }
  EXPECT_EQ(columns, 1);
}

TEST(EdgeMap, RejectsBadThresholds) {
  const ColorImage img(4, 4, ColorSpace::kSrgb8BitScaled);
  for (auto [lo, hi] : {std::pair{50.0, 10.0}, std::pair{-1.0, 10.0}}) {
    try {
      edge_map(img, lo, hi);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kInvalidThresholds);
    }
  }
}

int contour_hits(const ImagePlane& edges, const ImagePlane& contour) {
  int hits = 0;
  for (std::size_t i = 0; i < edges.size(); ++i)
    hits += edges.samples()[i] > 0 && contour.samples()[i] > 0;
  return hits;
}

TEST(EdgeMap, PipelineFindsAtLeastAsManyContourEdges) {
  const PipelineConfig cfg;
  for (int k = 0; k < 4; ++k) {
    const DegradedFixture fx = make_degraded_fixture(k, 256, cfg.seed);
    const ColorImage out = enhance(fx.degraded, cfg).output;
    const int before = contour_hits(
        edge_map(fx.degraded, cfg.metrics.edge_low, cfg.metrics.edge_high), fx.contour);
    const int after =
        contour_hits(edge_map(out, cfg.metrics.edge_low, cfg.metrics.edge_high), fx.contour);
    EXPECT_GE(after, before) << "fixture " << k;
  }
}

}  // namespace
}  // namespace aquaclean
