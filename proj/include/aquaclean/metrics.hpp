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

// Image quality and edge metrics: MSE/PSNR, Sobel gradient magnitude and its
// histogram, and Canny edge maps.

#ifndef AQUACLEAN_METRICS_HPP_
#define AQUACLEAN_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "aquaclean/image.hpp"
#include "aquaclean/parallel.hpp"

namespace aquaclean {

/// Mean squared difference over every pixel and channel.
inline double mse(const ColorImage& a, const ColorImage& b) {
  if (!a.same_shape(b) || a.space() != b.space())
    throw Error(ErrorKind::kDimensionMismatch,
                "mse needs images of equal size and color space");
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) {
    auto pa = a.plane(c).samples();
    auto pb = b.plane(c).samples();
    for (std::size_t i = 0; i < pa.size(); ++i) {
      const double d = pa[i] - pb[i];
      acc += d * d;
    }
  }
  return acc / (3.0 * static_cast<double>(a.pixel_count()));
}

/// PSNR for a given MSE with an 8-bit peak; +inf when the MSE is zero.
inline double psnr_from_mse(double mse_value, double peak = 255.0) {
  if (mse_value <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse_value);
}

inline double psnr(const ColorImage& a, const ColorImage& b) {
  return psnr_from_mse(mse(a, b));
}

/// Unnormalized 3x3 Sobel magnitude with edge-replicated borders.
inline ImagePlane gradient_magnitude(const ImagePlane& plane) {
  ImagePlane out(plane.width(), plane.height());
  parallel_for(0, plane.height(), [&](int y) {
    for (int x = 0; x < plane.width(); ++x) {
      auto p = [&](int dx, int dy) { return plane.clamped(x + dx, y + dy); };
      const double gx = (p(1, -1) + 2.0 * p(1, 0) + p(1, 1)) -
                        (p(-1, -1) + 2.0 * p(-1, 0) + p(-1, 1));
      const double gy = (p(-1, 1) + 2.0 * p(0, 1) + p(1, 1)) -
                        (p(-1, -1) + 2.0 * p(0, -1) + p(1, -1));
      out.at(x, y) = std::sqrt(gx * gx + gy * gy);
    }
  });
  return out;
}

/// Gradient magnitude of the luminance of a color image.
inline ImagePlane gradient_magnitude(const ColorImage& img) {
  return gradient_magnitude(luminance(img));
}

struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;
};

/// Uniform histogram over [0, upper]. Without an explicit upper bound the
/// plane maximum is used; pass the maximum over a compared pair to share
/// bins between them.
inline Histogram gradient_histogram(const ImagePlane& plane, int bins,
                                    std::optional<double> upper = std::nullopt) {
  if (bins < 2)
    throw Error(ErrorKind::kInvalidParameter, "histogram needs at least 2 bins");
  double hi = upper.value_or(
      *std::max_element(plane.samples().begin(), plane.samples().end()));
  if (!(hi > 0.0)) hi = 1.0;
  Histogram hist;
  hist.bin_edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) hist.bin_edges[i] = hi * i / bins;
  hist.counts.assign(bins, 0);
  for (double v : plane.samples()) {
    int idx = static_cast<int>(std::floor(v / hi * bins));
    ++hist.counts[std::clamp(idx, 0, bins - 1)];
  }
  hist.total = static_cast<std::int64_t>(plane.size());
  return hist;
}

/// `bin_low,bin_high,count`, one row per bin, LF endings.
inline void write_histogram_csv(const Histogram& hist, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoError, path + ": cannot open for writing");
  out.precision(17);
  out << "bin_low,bin_high,count\n";
  for (std::size_t i = 0; i < hist.counts.size(); ++i)
    out << hist.bin_edges[i] << ',' << hist.bin_edges[i + 1] << ','
        << hist.counts[i] << '\n';
  if (!out) throw Error(ErrorKind::kIoError, path + ": write failed");
}

namespace metrics_detail {

inline ImagePlane gaussian_blur(const ImagePlane& plane, double sigma) {
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * r + 1);
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) sum += k[i + r] = std::exp(-i * i / (2 * sigma * sigma));
  for (double& v : k) v /= sum;
  ImagePlane tmp(plane.width(), plane.height());
  ImagePlane out(plane.width(), plane.height());
  parallel_for(0, plane.height(), [&](int y) {
    for (int x = 0; x < plane.width(); ++x) {
      double acc = 0.0;
      for (int i = -r; i <= r; ++i) acc += k[i + r] * plane.clamped(x + i, y);
      tmp.at(x, y) = acc;
    }
  });
  parallel_for(0, plane.height(), [&](int y) {
    for (int x = 0; x < plane.width(); ++x) {
      double acc = 0.0;
      for (int i = -r; i <= r; ++i) acc += k[i + r] * tmp.clamped(x, y + i);
      out.at(x, y) = acc;
    }
  });
  return out;
}

}  // namespace metrics_detail

/// Canny edges of the luminance: Gaussian blur (sigma 1.4), Sobel,
/// non-maximum suppression, hysteresis between `low` and `high`.
/// Edge pixels are 255, the rest 0.
inline ImagePlane edge_map(const ColorImage& img, double low, double high) {
  if (!(low >= 0.0) || !(high >= low))
    throw Error(ErrorKind::kInvalidThresholds,
                "edge thresholds need 0 <= low <= high");
  const ImagePlane smooth = metrics_detail::gaussian_blur(luminance(img), 1.4);
  const int w = smooth.width();
  const int h = smooth.height();
  ImagePlane mag(w, h), gxs(w, h), gys(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto p = [&](int dx, int dy) { return smooth.clamped(x + dx, y + dy); };
      const double gx = (p(1, -1) + 2.0 * p(1, 0) + p(1, 1)) -
                        (p(-1, -1) + 2.0 * p(-1, 0) + p(-1, 1));
      const double gy = (p(-1, 1) + 2.0 * p(0, 1) + p(1, 1)) -
                        (p(-1, -1) + 2.0 * p(0, -1) + p(1, -1));
      gxs.at(x, y) = gx;
      gys.at(x, y) = gy;
      mag.at(x, y) = std::sqrt(gx * gx + gy * gy);
    }
  }

  // Non-maximum suppression along the quantized gradient direction. Ties
  // keep the pixel on the negative side so plateaus stay one pixel wide.
  ImagePlane thin(w, h);
  auto m = [&](int x, int y) {
    return (x < 0 || y < 0 || x >= w || y >= h) ? 0.0 : mag.at(x, y);
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = mag.at(x, y);
      if (v <= 0.0) continue;
      double angle = std::atan2(gys.at(x, y), gxs.at(x, y)) * 180.0 / 3.14159265358979323846;
      if (angle < 0) angle += 180.0;
      int dx = 1, dy = 0;
      if (angle >= 22.5 && angle < 67.5) {
        dx = 1; dy = 1;
      } else if (angle >= 67.5 && angle < 112.5) {
        dx = 0; dy = 1;
      } else if (angle >= 112.5 && angle < 157.5) {
        dx = -1; dy = 1;
      }
      if (v > m(x - dx, y - dy) && v >= m(x + dx, y + dy)) thin.at(x, y) = v;
    }
  }

  ImagePlane edges(w, h);
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (thin.at(x, y) >= high && thin.at(x, y) > 0.0 && edges.at(x, y) == 0.0) {
        edges.at(x, y) = 255.0;
        stack.emplace_back(x, y);
      }
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        for (int ny = cy - 1; ny <= cy + 1; ++ny) {
          for (int nx = cx - 1; nx <= cx + 1; ++nx) {
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            if (edges.at(nx, ny) == 0.0 && thin.at(nx, ny) > 0.0 &&
                thin.at(nx, ny) >= low) {
              edges.at(nx, ny) = 255.0;
              stack.emplace_back(nx, ny);
            }
          }
        }
      }
    }
  }
  return edges;
}

}  // namespace aquaclean

#endif  // AQUACLEAN_METRICS_HPP_
