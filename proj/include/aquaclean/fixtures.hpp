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

// Deterministic synthetic test scenes standing in for underwater captures.
//
// Degraded fixtures: a clean geometric scene multiplied by a Gaussian
// illumination bump, tinted by per-channel gains (blue/green cast) and
// corrupted with additive Gaussian noise. Noisy fixtures: a smooth scene
// plus Gaussian noise, with the clean scene kept as reference.
//
// Randomness comes from std::mt19937_64 (fully specified by the standard)
// with a local Box-Muller transform, so outputs are identical on every
// platform for a given seed.

#ifndef AQUACLEAN_FIXTURES_HPP_
#define AQUACLEAN_FIXTURES_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "aquaclean/image.hpp"

namespace aquaclean {

class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return mag * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Adds N(0, sigma^2) noise to every sample; no clamping.
inline void add_gaussian_noise(ImagePlane& plane, double sigma, FixtureRng& rng) {
  for (double& v : plane.samples()) v += sigma * rng.normal();
}

inline void add_gaussian_noise(ColorImage& img, double sigma, FixtureRng& rng) {
  for (auto& p : img.planes()) add_gaussian_noise(p, sigma, rng);
}

struct DegradedFixture {
  ColorImage clean;
  ColorImage degraded;
  ImagePlane contour;  // 1 on object boundary pixels, 0 elsewhere
};

namespace fixture_detail {

struct Shape {
  bool disk;
  double cx, cy, a, b;  // center and radius / half extents
  std::array<double, 3> color;

  bool contains(double x, double y) const {
    if (disk) return (x - cx) * (x - cx) + (y - cy) * (y - cy) <= a * a;
    return std::abs(x - cx) <= a && std::abs(y - cy) <= b;
  }
};

}  // namespace fixture_detail

/// Geometric scene of `size` x `size` pixels: a smooth background with a few
/// flat-colored disks and rectangles, degraded as described above.
inline DegradedFixture make_degraded_fixture(int index, int size, std::uint64_t seed) {
  using fixture_detail::Shape;
  FixtureRng rng(seed * 1000003ULL + 17ULL * static_cast<std::uint64_t>(index) + 1);
  const double s = size;

  std::vector<Shape> shapes;
  const int count = 4 + index % 3;
  for (int i = 0; i < count; ++i) {
    Shape sh;
    sh.disk = rng.uniform() < 0.5;
    sh.cx = rng.uniform(0.2, 0.8) * s;
    sh.cy = rng.uniform(0.2, 0.8) * s;
    sh.a = rng.uniform(0.07, 0.16) * s;
    sh.b = rng.uniform(0.07, 0.16) * s;
    for (double& c : sh.color) c = rng.uniform(40.0, 230.0);
    shapes.push_back(sh);
  }
  const std::array<double, 3> bg_top = {rng.uniform(90, 140), rng.uniform(110, 160),
                                        rng.uniform(120, 170)};
  const std::array<double, 3> bg_bottom = {rng.uniform(150, 200), rng.uniform(140, 190),
                                           rng.uniform(110, 150)};

  DegradedFixture fx{ColorImage(size, size, ColorSpace::kSrgb8BitScaled),
                     ColorImage(size, size, ColorSpace::kSrgb8BitScaled),
                     ImagePlane(size, size)};
  std::vector<int> label(static_cast<std::size_t>(size) * size, -1);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double t = y / std::max(1.0, s - 1.0);
      std::array<double, 3> v;
      for (int c = 0; c < 3; ++c) v[c] = (1 - t) * bg_top[c] + t * bg_bottom[c];
      int id = -1;
      for (int i = 0; i < count; ++i) {
        if (shapes[i].contains(x + 0.5, y + 0.5)) {
          id = i;
          v = shapes[i].color;
        }
      }
      label[static_cast<std::size_t>(y) * size + x] = id;
      for (int c = 0; c < 3; ++c) fx.clean.plane(c).at(x, y) = v[c];
    }
  }
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const int id = label[static_cast<std::size_t>(y) * size + x];
      bool boundary = false;
      if (x + 1 < size) boundary |= label[static_cast<std::size_t>(y) * size + x + 1] != id;
      if (y + 1 < size) boundary |= label[static_cast<std::size_t>(y + 1) * size + x] != id;
      if (x > 0) boundary |= label[static_cast<std::size_t>(y) * size + x - 1] != id;
      if (y > 0) boundary |= label[static_cast<std::size_t>(y - 1) * size + x] != id;
      fx.contour.at(x, y) = boundary ? 1.0 : 0.0;
    }
  }

  // Artificial lighting: bright spot with dim surroundings.
  const double lx = rng.uniform(0.35, 0.65) * s;
  const double ly = rng.uniform(0.35, 0.65) * s;
  const double spread = rng.uniform(0.25, 0.4) * s;
  const double floor_level = rng.uniform(0.25, 0.4);
  const std::array<double, 3> cast = {rng.uniform(0.45, 0.6), rng.uniform(0.75, 0.9),
                                      1.0};
  const double noise_sigma = 4.0 + index;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double d2 = (x - lx) * (x - lx) + (y - ly) * (y - ly);
      const double light =
          floor_level + (1.0 - floor_level) * std::exp(-d2 / (2 * spread * spread));
      for (int c = 0; c < 3; ++c)
        fx.degraded.plane(c).at(x, y) = fx.clean.plane(c).at(x, y) * light * cast[c];
    }
  }
  add_gaussian_noise(fx.degraded, noise_sigma, rng);
  clamp_samples(fx.degraded, 0.0, 255.0);
  return fx;
}

struct NoisyFixture {
  ColorImage clean;
  ColorImage noisy;
  double sigma = 0.0;
};

/// Smooth scene (sum of broad Gaussian blobs over a gentle ramp) plus
/// Gaussian noise with sigma 10, 15, 20, 25 for index 0..3.
inline NoisyFixture make_noisy_fixture(int index, int size, std::uint64_t seed) {
  FixtureRng rng(seed * 7919ULL + 101ULL * static_cast<std::uint64_t>(index) + 5);
  const double s = size;
  NoisyFixture fx{ColorImage(size, size, ColorSpace::kSrgb8BitScaled, 0.0),
                  ColorImage(size, size, ColorSpace::kSrgb8BitScaled, 0.0),
                  10.0 + 5.0 * (index % 4)};
  struct Blob {
    double cx, cy, r;
    std::array<double, 3> amp;
  };
  std::vector<Blob> blobs(6);
  for (auto& b : blobs) {
    b.cx = rng.uniform(0.0, 1.0) * s;
    b.cy = rng.uniform(0.0, 1.0) * s;
    b.r = rng.uniform(0.08, 0.25) * s;
    for (double& a : b.amp) a = rng.uniform(-60.0, 60.0);
  }
  std::array<double, 3> base, ramp;
  for (int c = 0; c < 3; ++c) {
    base[c] = rng.uniform(100.0, 150.0);
    ramp[c] = rng.uniform(-30.0, 30.0);
  }
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      for (int c = 0; c < 3; ++c) {
        double v = base[c] + ramp[c] * (x / s - 0.5);
        for (const auto& b : blobs) {
          const double d2 = (x - b.cx) * (x - b.cx) + (y - b.cy) * (y - b.cy);
          v += b.amp[c] * std::exp(-d2 / (2 * b.r * b.r));
        }
        fx.clean.plane(c).at(x, y) = std::clamp(v, 20.0, 235.0);
      }
    }
  }
  fx.noisy = fx.clean;
  add_gaussian_noise(fx.noisy, fx.sigma, rng);
  clamp_samples(fx.noisy, 0.0, 255.0);
  return fx;
}

/// Vertical step between two gray levels (left `low`, right `high`) with
/// optional Gaussian noise, as an sRGB-scaled image.
inline ColorImage make_step_image(int width, int height, double low, double high,
                                  double noise_sigma, std::uint64_t seed) {
  ColorImage img(width, height, ColorSpace::kSrgb8BitScaled);
  FixtureRng rng(seed);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x)
        img.plane(c).at(x, y) = x < width / 2 ? low : high;
  }
  if (noise_sigma > 0.0) add_gaussian_noise(img, noise_sigma, rng);
  return img;
}

}  // namespace aquaclean

#endif  // AQUACLEAN_FIXTURES_HPP_
