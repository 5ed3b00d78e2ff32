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

// 2D Fourier transforms and homomorphic illumination correction.
//
// The homomorphic filter treats each channel as illumination x reflectance,
// moves to the log domain where the product becomes a sum, attenuates the
// slowly varying (low-frequency) illumination term with a Gaussian
// high-emphasis gain, and maps back with exp.

#ifndef AQUACLEAN_SPECTRAL_HPP_
#define AQUACLEAN_SPECTRAL_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "aquaclean/fft.hpp"
#include "aquaclean/image.hpp"
#include "aquaclean/parallel.hpp"

namespace aquaclean {

enum class DcPosition { kCorner, kCentered };

/// Complex W x H spectrum, row-major.
struct SpectralGrid {
  int width = 0;
  int height = 0;
  std::vector<Complex> values;
  DcPosition dc_position = DcPosition::kCorner;

  Complex& at(int kx, int ky) {
    return values[static_cast<std::size_t>(ky) * width + kx];
  }
  const Complex& at(int kx, int ky) const {
    return values[static_cast<std::size_t>(ky) * width + kx];
  }
};

namespace spectral_detail {

// In-place separable transform: rows, then columns.
inline void transform2(SpectralGrid& grid, bool inverse) {
  const int w = grid.width;
  const int h = grid.height;
  const FftPlan row_plan(static_cast<std::size_t>(w));
  const FftPlan col_plan(static_cast<std::size_t>(h));
  parallel_for(0, h, [&](int y) {
    std::span<Complex> row(grid.values.data() + static_cast<std::size_t>(y) * w,
                           static_cast<std::size_t>(w));
    inverse ? row_plan.backward(row) : row_plan.forward(row);
  });
  parallel_for(0, w, [&](int x) {
    std::vector<Complex> col(static_cast<std::size_t>(h));
    for (int y = 0; y < h; ++y) col[y] = grid.at(x, y);
    inverse ? col_plan.backward(col) : col_plan.forward(col);
    for (int y = 0; y < h; ++y) grid.at(x, y) = col[y];
  });
}

// Swaps quadrants so that the DC bin moves between (0,0) and (W/2, H/2).
inline SpectralGrid shift(const SpectralGrid& grid, bool to_center) {
  SpectralGrid out = grid;
  const int w = grid.width;
  const int h = grid.height;
  const int sx = to_center ? w / 2 : (w + 1) / 2;
  const int sy = to_center ? h / 2 : (h + 1) / 2;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      out.at((x + sx) % w, (y + sy) % h) = grid.at(x, y);
  out.dc_position = to_center ? DcPosition::kCentered : DcPosition::kCorner;
  return out;
}

}  // namespace spectral_detail

/// Reorders a corner-DC spectrum so DC sits at (W/2, H/2); the inverse
/// direction is applied when the grid is already centered.
inline SpectralGrid recenter(const SpectralGrid& grid) {
  return spectral_detail::shift(grid, grid.dc_position == DcPosition::kCorner);
}

/// Unnormalized forward transform; the DC bin holds the sample sum.
inline SpectralGrid forward_dft2(const ImagePlane& plane) {
  SpectralGrid grid;
  grid.width = plane.width();
  grid.height = plane.height();
  grid.values.assign(plane.samples().begin(), plane.samples().end());
  spectral_detail::transform2(grid, /*inverse=*/false);
  return grid;
}

/// 1/(W*H)-normalized inverse. The imaginary part is dropped; it must stay
/// below 1e-6 of the largest output magnitude or the spectrum was not
/// conjugate-symmetric.
inline ImagePlane inverse_dft2(const SpectralGrid& input) {
  SpectralGrid grid = input.dc_position == DcPosition::kCorner
                          ? input
                          : spectral_detail::shift(input, false);
  spectral_detail::transform2(grid, /*inverse=*/true);
  const double scale = 1.0 / (static_cast<double>(grid.width) * grid.height);
  ImagePlane out(grid.width, grid.height);
  double max_mag = 0.0;
  double max_imag = 0.0;
  auto samples = out.samples();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Complex v = grid.values[i] * scale;
    samples[i] = v.real();
    max_mag = std::max(max_mag, std::abs(v));
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  if (max_imag > 1e-6 * max_mag) {
    throw Error(ErrorKind::kResidualImaginaryTooLarge,
                "inverse transform left imaginary residue " +
                    std::to_string(max_imag) + " against magnitude " +
                    std::to_string(max_mag));
  }
  return out;
}

enum class HomomorphicChannels { kRgb, kLuminance };

struct HomomorphicParams {
  double r_high = 2.5;
  double r_low = 0.5;
  // Cutoff as a fraction of the Nyquist radius, min(W, H) / 2 bins.
  double cutoff = 0.1;
  // Offset added before the log so zero samples stay finite.
  double epsilon_log = 1.0;
  HomomorphicChannels channels = HomomorphicChannels::kRgb;

  void validate() const {
    if (!(r_high > r_low) || !(r_low > 0.0))
      throw Error(ErrorKind::kInvalidParameter,
                  "homomorphic gains need r_high > r_low > 0");
    if (!(cutoff > 0.0))
      throw Error(ErrorKind::kInvalidParameter, "homomorphic cutoff must be > 0");
    if (!(epsilon_log > 0.0))
      throw Error(ErrorKind::kInvalidParameter,
                  "homomorphic epsilon_log must be > 0");
  }

  /// Gaussian width of the gain in frequency bins for a W x H image.
  double delta_w(int width, int height) const {
    return cutoff * 0.5 * static_cast<double>(std::min(width, height));
  }
};

/// Gaussian high-emphasis gain: r_low at DC rising to r_high far from it.
inline double high_emphasis_gain(double wx, double wy, double r_high,
                                 double r_low, double delta_w) {
  const double r2 = wx * wx + wy * wy;
  return (r_high - r_low) * (1.0 - std::exp(-r2 / (2.0 * delta_w * delta_w))) +
         r_low;
}

inline double high_emphasis_gain(double wx, double wy, const HomomorphicParams& p,
                                 double delta_w) {
  return high_emphasis_gain(wx, wy, p.r_high, p.r_low, delta_w);
}

/// Distance of bin k from DC on a wrapped axis of length n.
inline double wrapped_frequency(int k, int n) {
  return static_cast<double>(std::min(k, n - k));
}

/// Log -> spectrum -> gain -> inverse -> exp on one plane of 0..255 data.
/// The result is not clamped.
inline ImagePlane homomorphic_plane(const ImagePlane& plane,
                                    const HomomorphicParams& p) {
  p.validate();
  ImagePlane log_plane(plane.width(), plane.height());
  auto src = plane.samples();
  auto dst = log_plane.samples();
  for (std::size_t i = 0; i < dst.size(); ++i)
    dst[i] = std::log(std::max(src[i], 0.0) + p.epsilon_log);

  SpectralGrid spectrum = forward_dft2(log_plane);
  const int w = spectrum.width;
  const int h = spectrum.height;
  const double delta = p.delta_w(w, h);
  std::vector<double> gx(w);
  for (int kx = 0; kx < w; ++kx) gx[kx] = wrapped_frequency(kx, w);
  for (int ky = 0; ky < h; ++ky) {
    const double fy = wrapped_frequency(ky, h);
    for (int kx = 0; kx < w; ++kx)
      spectrum.at(kx, ky) *= high_emphasis_gain(gx[kx], fy, p, delta);
  }

  ImagePlane out = inverse_dft2(spectrum);
  for (double& v : out.samples()) v = std::exp(v) - p.epsilon_log;
  return out;
}

/// Homomorphic illumination correction of an sRGB-scaled image. Output is
/// clamped to [0, 255].
inline ColorImage homomorphic_filter(const ColorImage& img,
                                     const HomomorphicParams& p) {
  require_space(img, ColorSpace::kSrgb8BitScaled, "homomorphic_filter");
  p.validate();
  ColorImage out(img.width(), img.height(), ColorSpace::kSrgb8BitScaled);
  if (p.channels == HomomorphicChannels::kRgb) {
    for (int c = 0; c < 3; ++c) out.plane(c) = homomorphic_plane(img.plane(c), p);
  } else {
    const ImagePlane luma = luminance(img);
    const ImagePlane filtered = homomorphic_plane(luma, p);
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
      const double ratio = (filtered.samples()[i] + p.epsilon_log) /
                           (luma.samples()[i] + p.epsilon_log);
      for (int c = 0; c < 3; ++c) {
        out.plane(c).samples()[i] =
            (img.plane(c).samples()[i] + p.epsilon_log) * ratio - p.epsilon_log;
      }
    }
  }
  clamp_samples(out, 0.0, 255.0);
  return out;
}

}  // namespace aquaclean

#endif  // AQUACLEAN_SPECTRAL_HPP_
