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

#ifndef AQUACLEAN_SPATIAL_HPP_
#define AQUACLEAN_SPATIAL_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "aquaclean/image.hpp"
#include "aquaclean/parallel.hpp"

namespace aquaclean {

struct BilateralParams {
  double sigma_d = 1.0;   // pixels
  double sigma_r = 10.0;  // Lab distance
  int radius = 0;         // 0 selects ceil(3 * sigma_d)

  int effective_radius() const {
    return radius > 0 ? radius : static_cast<int>(std::ceil(3.0 * sigma_d));
  }

  void validate() const {
    if (!(sigma_d > 0.0) || !(sigma_r > 0.0))
      throw Error(ErrorKind::kInvalidParameter,
                  "bilateral sigma_d and sigma_r must be > 0");
    if (radius < 0 || effective_radius() < 1)
      throw Error(ErrorKind::kInvalidParameter, "bilateral radius must be >= 1");
  }
};

enum class Conductance { kExp, kRational };

struct DiffusionParams {
  int iterations = 15;
  double lambda = 0.15;
  double kappa = 10.0;
  Conductance conductance = Conductance::kExp;

  void validate() const {
    if (iterations < 1)
      throw Error(ErrorKind::kInvalidParameter, "diffusion iterations must be >= 1");
    if (!(lambda > 0.0) || lambda > 0.25)
      throw Error(ErrorKind::kInvalidParameter,
                  "diffusion lambda must lie in (0, 0.25]");
    if (!(kappa > 0.0))
      throw Error(ErrorKind::kInvalidParameter, "diffusion kappa must be > 0");
  }
};

/// Edge-preserving bilateral smoothing of a Lab image. Weights combine a
/// Gaussian on spatial distance with a Gaussian on the joint Lab distance to
/// the window center; all three channels share those weights. Borders are
/// edge-replicated.
inline ColorImage bilateral_filter(const ColorImage& img, const BilateralParams& p) {
  require_space(img, ColorSpace::kCieLab, "bilateral_filter");
  p.validate();
  const int w = img.width();
  const int h = img.height();
  const int r = p.effective_radius();
  const int side = 2 * r + 1;

  std::vector<double> closeness(static_cast<std::size_t>(side) * side);
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx)
      closeness[(dy + r) * side + (dx + r)] =
          std::exp(-(dx * dx + dy * dy) / (2.0 * p.sigma_d * p.sigma_d));
  const double range_scale = -1.0 / (2.0 * p.sigma_r * p.sigma_r);

  // Interleaved, edge-padded copy so the window loop needs no clamping.
  const int pw = w + 2 * r;
  const int ph = h + 2 * r;
  std::vector<double> padded(static_cast<std::size_t>(pw) * ph * 3);
  for (int y = 0; y < ph; ++y)
    for (int x = 0; x < pw; ++x)
      for (int c = 0; c < 3; ++c)
        padded[(static_cast<std::size_t>(y) * pw + x) * 3 + c] =
            img.plane(c).clamped(x - r, y - r);

  ColorImage out(w, h, ColorSpace::kCieLab);
  parallel_for(0, h, [&](int y) {
    for (int x = 0; x < w; ++x) {
      const double* center = &padded[(static_cast<std::size_t>(y + r) * pw + x + r) * 3];
      double sum0 = 0.0, sum1 = 0.0, sum2 = 0.0, norm = 0.0;
      for (int dy = 0; dy < side; ++dy) {
        const double* nb = &padded[(static_cast<std::size_t>(y + dy) * pw + x) * 3];
        const double* cw = &closeness[dy * side];
        for (int dx = 0; dx < side; ++dx, nb += 3) {
          const double d0 = nb[0] - center[0];
          const double d1 = nb[1] - center[1];
          const double d2 = nb[2] - center[2];
          const double wgt =
              cw[dx] * std::exp((d0 * d0 + d1 * d1 + d2 * d2) * range_scale);
          sum0 += wgt * d0;
          sum1 += wgt * d1;
          sum2 += wgt * d2;
          norm += wgt;
        }
      }
      // Offsets from the center keep constant regions exactly fixed.
      out.plane(0).at(x, y) = center[0] + sum0 / norm;
      out.plane(1).at(x, y) = center[1] + sum1 / norm;
      out.plane(2).at(x, y) = center[2] + sum2 / norm;
    }
  });
  return out;
}

inline double conductance(double grad, const DiffusionParams& p) {
  const double q = grad / p.kappa;
  return p.conductance == Conductance::kExp ? std::exp(-q * q)
                                            : 1.0 / (1.0 + q * q);
}

/// Explicit four-neighbor Perona-Malik diffusion, per channel, with
/// reflective (zero-flux) borders.
inline ColorImage anisotropic_diffusion(const ColorImage& img,
                                        const DiffusionParams& p) {
  require_space(img, ColorSpace::kCieLab, "anisotropic_diffusion");
  p.validate();
  const int w = img.width();
  const int h = img.height();
  ColorImage out = img;
  for (int c = 0; c < 3; ++c) {
    ImagePlane cur = img.plane(c);
    ImagePlane next(w, h);
    for (int it = 0; it < p.iterations; ++it) {
      parallel_for(0, h, [&](int y) {
        for (int x = 0; x < w; ++x) {
          const double u = cur.at(x, y);
          const double dn = cur.at(x, y > 0 ? y - 1 : y) - u;
          const double ds = cur.at(x, y + 1 < h ? y + 1 : y) - u;
          const double de = cur.at(x + 1 < w ? x + 1 : x, y) - u;
          const double dw = cur.at(x > 0 ? x - 1 : x, y) - u;
          next.at(x, y) = u + p.lambda * (conductance(std::abs(dn), p) * dn +
                                          conductance(std::abs(ds), p) * ds +
                                          conductance(std::abs(de), p) * de +
                                          conductance(std::abs(dw), p) * dw);
        }
      });
      std::swap(cur, next);
    }
    out.plane(c) = std::move(cur);
  }
  return out;
}

}  // namespace aquaclean

#endif  // AQUACLEAN_SPATIAL_HPP_
