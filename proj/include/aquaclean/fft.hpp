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

#ifndef AQUACLEAN_FFT_HPP_
#define AQUACLEAN_FFT_HPP_

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace aquaclean {

using Complex = std::complex<double>;

/// Unnormalized 1D forward DFT of a fixed length. Powers of two use an
/// iterative radix-2 kernel; every other length goes through Bluestein's
/// chirp-z reformulation on a power-of-two convolution.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n) : n_(n) {
    if (n_ <= 1) return;
    if (is_pow2(n_)) {
      init_radix2(n_, twiddles_);
      return;
    }
    m_ = 1;
    while (m_ < 2 * n_ - 1) m_ <<= 1;
    init_radix2(m_, twiddles_);
    chirp_.resize(n_);
    const std::size_t period = 2 * n_;
    for (std::size_t k = 0; k < n_; ++k) {
      // k^2 mod 2n keeps the angle argument small and exact.
      const std::size_t k2 = (k * k) % period;
      chirp_[k] = std::polar(1.0, -std::numbers::pi * static_cast<double>(k2) /
                                      static_cast<double>(n_));
    }
    chirp_kernel_.assign(m_, Complex{});
    chirp_kernel_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n_; ++k) {
      chirp_kernel_[k] = std::conj(chirp_[k]);
      chirp_kernel_[m_ - k] = std::conj(chirp_[k]);
    }
    radix2(chirp_kernel_, twiddles_);
  }

  std::size_t size() const noexcept { return n_; }

  void forward(std::span<Complex> data) const {
    if (n_ <= 1) return;
    if (m_ == 0) {
      radix2(data, twiddles_);
      return;
    }
    std::vector<Complex> buf(m_, Complex{});
    for (std::size_t k = 0; k < n_; ++k) buf[k] = data[k] * chirp_[k];
    radix2(buf, twiddles_);
    for (std::size_t k = 0; k < m_; ++k) buf[k] *= chirp_kernel_[k];
    // Inverse of the length-m transform via conjugation.
    for (auto& v : buf) v = std::conj(v);
    radix2(buf, twiddles_);
    const double scale = 1.0 / static_cast<double>(m_);
    for (std::size_t k = 0; k < n_; ++k)
      data[k] = std::conj(buf[k]) * scale * chirp_[k];
  }

  /// Unnormalized inverse (no 1/n factor).
  void backward(std::span<Complex> data) const {
    for (auto& v : data) v = std::conj(v);
    forward(data);
    for (auto& v : data) v = std::conj(v);
  }

 private:
  static bool is_pow2(std::size_t n) { return (n & (n - 1)) == 0; }

  static void init_radix2(std::size_t n, std::vector<Complex>& tw) {
    tw.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
      tw[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) /
                                  static_cast<double>(n));
  }

  static void radix2(std::span<Complex> a, const std::vector<Complex>& tw) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
      std::size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = n / len;
      for (std::size_t i = 0; i < n; i += len) {
        for (std::size_t k = 0; k < half; ++k) {
          const Complex t = a[i + k + half] * tw[k * stride];
          a[i + k + half] = a[i + k] - t;
          a[i + k] += t;
        }
      }
    }
  }

  std::size_t n_;
  std::size_t m_ = 0;  // Bluestein convolution length, 0 for radix-2 sizes
  std::vector<Complex> twiddles_;
  std::vector<Complex> chirp_;
  std::vector<Complex> chirp_kernel_;
};

}  // namespace aquaclean

#endif  // AQUACLEAN_FFT_HPP_
