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

#include <functional>
#include <string>

#include "test_util.hpp"

namespace aquaclean {
namespace {

using testing::read_file;
using testing::scratch_dir;
using testing::write_file;

void expect_error(ErrorKind kind, const std::function<void()>& fn) {
  try {
    fn();
    FAIL() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

TEST(ImagePlane, RejectsEmptyAndMismatchedSizes) {
  expect_error(ErrorKind::kInvalidParameter, [] { ImagePlane(0, 3); });
  expect_error(ErrorKind::kDimensionMismatch,
               [] { ImagePlane(2, 2, std::vector<double>(3, 0.0)); });
}

TEST(ImagePlane, ClampedAccessReplicatesBorder) {
  ImagePlane p(2, 2, std::vector<double>{1, 2, 3, 4});
  EXPECT_EQ(p.clamped(-5, 0), 1);
  EXPECT_EQ(p.clamped(7, 1), 4);
  EXPECT_EQ(p.clamped(1, -1), 2);
}

TEST(ImagePlane, TransposeSwapsAxes) {
  ImagePlane p(3, 2, std::vector<double>{1, 2, 3, 4, 5, 6});
  ImagePlane t = transpose(p);
  ASSERT_EQ(t.width(), 2);
  ASSERT_EQ(t.height(), 3);
  EXPECT_EQ(t.at(1, 2), p.at(2, 1));
  EXPECT_EQ(transpose(t), p);
}

TEST(ColorImage, PlanesMustShareShape) {
  expect_error(ErrorKind::kDimensionMismatch, [] {
    ColorImage({ImagePlane(2, 2), ImagePlane(2, 2), ImagePlane(3, 2)},
               ColorSpace::kSrgb8BitScaled);
  });
}

TEST(Luminance, UsesRec601Weights) {
  ColorImage img(1, 1, ColorSpace::kSrgb8BitScaled);
  img.plane(0).at(0, 0) = 100;
  img.plane(1).at(0, 0) = 50;
  img.plane(2).at(0, 0) = 10;
  EXPECT_NEAR(luminance(img).at(0, 0), 0.299 * 100 + 0.587 * 50 + 0.114 * 10, 1e-12);
}

TEST(LoadImage, RedP6) {
  const auto dir = scratch_dir("io");
  std::string body;
  for (int i = 0; i < 4; ++i) body += std::string("\xff\x00\x00", 3);
  write_file(dir / "red.ppm", "P6\n2 2\n255\n" + body);
  const ColorImage img = load_image((dir / "red.ppm").string());
  ASSERT_EQ(img.width(), 2);
  ASSERT_EQ(img.height(), 2);
  EXPECT_EQ(img.space(), ColorSpace::kSrgb8BitScaled);
  for (double v : img.plane(0).samples()) EXPECT_EQ(v, 255.0);
  for (double v : img.plane(1).samples()) EXPECT_EQ(v, 0.0);
  for (double v : img.plane(2).samples()) EXPECT_EQ(v, 0.0);
}

TEST(LoadImage, GrayP5IsReplicated) {
  const auto dir = scratch_dir("io");
  write_file(dir / "g.pgm", "P5\n1 1\n255\n\x80");
  const ColorImage img = load_image((dir / "g.pgm").string());
  for (int c = 0; c < 3; ++c) EXPECT_EQ(img.plane(c).at(0, 0), 128.0);
}

TEST(LoadImage, HeaderCommentsAreSkipped) {
  const auto dir = scratch_dir("io");
  write_file(dir / "c.pgm", "P5 # kind\n# a comment line\n2 1\n255\n\x01\x02");
  const ColorImage img = load_image((dir / "c.pgm").string());
  EXPECT_EQ(img.plane(0).at(1, 0), 2.0);
}

TEST(LoadImage, Errors) {
  const auto dir = scratch_dir("io");
  expect_error(ErrorKind::kFileNotFound,
               [&] { load_image((dir / "missing.ppm").string()); });

  write_file(dir / "short.ppm", "P6\n2 2\n255\n" + std::string(11, '\0'));
  expect_error(ErrorKind::kMalformedHeader, [&] { load_image((dir / "short.ppm").string()); });

  write_file(dir / "deep.ppm", "P6\n1 1\n65535\n" + std::string(6, '\0'));
  expect_error(ErrorKind::kUnsupportedFormat, [&] { load_image((dir / "deep.ppm").string()); });

  write_file(dir / "x.png", std::string("\x89PNG\r\n\x1a\n", 8) + "rest");
  expect_error(ErrorKind::kUnsupportedFormat, [&] { load_image((dir / "x.png").string()); });

  write_file(dir / "ascii.ppm", "P3\n1 1\n255\n0 0 0\n");
  expect_error(ErrorKind::kUnsupportedFormat, [&] { load_image((dir / "ascii.ppm").string()); });

  write_file(dir / "bad.ppm", "P6\nab 2\n255\n");
  expect_error(ErrorKind::kMalformedHeader, [&] { load_image((dir / "bad.ppm").string()); });
}

TEST(SaveImage, WhiteBodyIsAllFF) {
  const auto dir = scratch_dir("io");
  ColorImage img(3, 2, ColorSpace::kSrgb8BitScaled, 255.0);
  save_image(img, (dir / "w.ppm").string());
  const std::string bytes = read_file(dir / "w.ppm");
  const std::string header = "P6\n3 2\n255\n";
  ASSERT_EQ(bytes.size(), header.size() + 18);
  EXPECT_EQ(bytes.substr(0, header.size()), header);
  for (std::size_t i = header.size(); i < bytes.size(); ++i)
    EXPECT_EQ(static_cast<unsigned char>(bytes[i]), 0xFF);
}

TEST(SaveImage, RoundsHalfUpAndClamps) {
  const auto dir = scratch_dir("io");
  ColorImage img(3, 1, ColorSpace::kSrgb8BitScaled);
  img.plane(0).at(0, 0) = 127.5;
  img.plane(0).at(1, 0) = -20.0;
  img.plane(0).at(2, 0) = 300.0;
  img.plane(1).at(0, 0) = 127.49;
  save_image(img, (dir / "r.ppm").string());
  const ColorImage back = load_image((dir / "r.ppm").string());
  EXPECT_EQ(back.plane(0).at(0, 0), 128.0);
  EXPECT_EQ(back.plane(0).at(1, 0), 0.0);
  EXPECT_EQ(back.plane(0).at(2, 0), 255.0);
  EXPECT_EQ(back.plane(1).at(0, 0), 127.0);
}

TEST(SaveImage, RejectsLab) {
  const auto dir = scratch_dir("io");
  ColorImage img(1, 1, ColorSpace::kCieLab);
  expect_error(ErrorKind::kWrongColorSpace, [&] { save_image(img, (dir / "l.ppm").string()); });
}

TEST(SaveImage, IntegerImagesRoundTripExactly) {
  const auto dir = scratch_dir("io");
  ColorImage img(5, 4, ColorSpace::kSrgb8BitScaled);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < img.pixel_count(); ++i)
      img.plane(c).samples()[i] = static_cast<double>((i * 37 + c * 91) % 256);
  save_image(img, (dir / "rt.ppm").string());
  EXPECT_EQ(load_image((dir / "rt.ppm").string()), img);
}

TEST(SavePlane, WritesP5) {
  const auto dir = scratch_dir("io");
  save_plane(ImagePlane(2, 1, std::vector<double>{0.0, 254.6}), (dir / "p.pgm").string());
  EXPECT_EQ(read_file(dir / "p.pgm"), std::string("P5\n2 1\n255\n\x00\xff", 13));
}

TEST(Parallel, ForCoversRangeAndPropagatesErrors) {
  std::vector<int> hits(100, 0);
  parallel_for(0, 100, [&](int i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(0, 50,
                            [](int i) {
                              if (i == 17) throw Error(ErrorKind::kIoError, "boom");
                            }),
               Error);
}

TEST(Parallel, ThreadCountOverride) {
  set_thread_count(3);
  EXPECT_EQ(thread_count(), 3);
  set_thread_count(0);
  EXPECT_GE(thread_count(), 1);
}

}  // namespace
}  // namespace aquaclean
