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

#ifndef AQUACLEAN_IMAGE_HPP_
#define AQUACLEAN_IMAGE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aquaclean {

enum class ErrorKind {
  kFileNotFound,
  kUnsupportedFormat,
  kMalformedHeader,
  kIoError,
  kWrongColorSpace,
  kResidualImaginaryTooLarge,
  kTooManyLevels,
  kBankMismatch,
  kDimensionMismatch,
  kInvalidThresholds,
  kInvalidParameter,
  kConfig,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kFileNotFound: return "FileNotFound";
    case ErrorKind::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::kMalformedHeader: return "MalformedHeader";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kWrongColorSpace: return "WrongColorSpace";
    case ErrorKind::kResidualImaginaryTooLarge: return "ResidualImaginaryTooLarge";
    case ErrorKind::kTooManyLevels: return "TooManyLevels";
    case ErrorKind::kBankMismatch: return "BankMismatch";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kInvalidThresholds: return "InvalidThresholds";
    case ErrorKind::kInvalidParameter: return "InvalidParameter";
    case ErrorKind::kConfig: return "ConfigError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Single channel of real-valued samples, stored row-major.
class ImagePlane {
 public:
  ImagePlane() = default;

  ImagePlane(int width, int height, double fill = 0.0)
      : width_(width), height_(height) {
    if (width < 1 || height < 1) {
      throw Error(ErrorKind::kInvalidParameter,
                  "plane dimensions must be positive, got " +
                      std::to_string(width) + "x" + std::to_string(height));
    }
    samples_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  ImagePlane(int width, int height, std::vector<double> samples)
      : ImagePlane(width, height) {
    if (samples.size() != samples_.size()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "sample count " + std::to_string(samples.size()) +
                      " does not match " + std::to_string(width) + "x" +
                      std::to_string(height));
    }
    samples_ = std::move(samples);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }

  double& at(int x, int y) {
    return samples_[static_cast<std::size_t>(y) * width_ + x];
  }
  double at(int x, int y) const {
    return samples_[static_cast<std::size_t>(y) * width_ + x];
  }

  /// Edge-replicated access for coordinates outside the plane.
  double clamped(int x, int y) const {
    return at(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1));
  }

  // Views into the plane's storage; not available on temporaries, whose
  // storage would be gone before the view is used.
  std::span<double> row(int y) & {
    return {samples_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }
  std::span<const double> row(int y) const& {
    return {samples_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }

  std::span<const double> row(int y) && = delete;

  std::span<double> samples() & noexcept { return samples_; }
  std::span<const double> samples() const& noexcept { return samples_; }
  std::span<const double> samples() && = delete;

  bool same_shape(const ImagePlane& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  bool all_finite() const {
    return std::all_of(samples_.begin(), samples_.end(),
                       [](double v) { return std::isfinite(v); });
  }

  friend bool operator==(const ImagePlane&, const ImagePlane&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> samples_;
};

inline ImagePlane transpose(const ImagePlane& plane) {
  ImagePlane out(plane.height(), plane.width());
  for (int y = 0; y < plane.height(); ++y)
    for (int x = 0; x < plane.width(); ++x) out.at(y, x) = plane.at(x, y);
  return out;
}

enum class ColorSpace { kSrgb8BitScaled, kLinearRgb, kCieLab, kLogDomain };

inline const char* to_string(ColorSpace space) {
  switch (space) {
    case ColorSpace::kSrgb8BitScaled: return "SRGB_8BIT_SCALED";
    case ColorSpace::kLinearRgb: return "LINEAR_RGB";
    case ColorSpace::kCieLab: return "CIELAB";
    case ColorSpace::kLogDomain: return "LOG_DOMAIN";
  }
  return "UNKNOWN";
}

/// Three equally sized planes tagged with the space their samples live in.
class ColorImage {
 public:
  static constexpr double kNominalPeak = 255.0;

  ColorImage() = default;

  ColorImage(int width, int height, ColorSpace space, double fill = 0.0)
      : planes_{ImagePlane(width, height, fill), ImagePlane(width, height, fill),
                ImagePlane(width, height, fill)},
        space_(space) {}

  ColorImage(std::array<ImagePlane, 3> planes, ColorSpace space)
      : planes_(std::move(planes)), space_(space) {
    if (!planes_[0].same_shape(planes_[1]) ||
        !planes_[0].same_shape(planes_[2])) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "color planes must share width and height");
    }
  }

  int width() const noexcept { return planes_[0].width(); }
  int height() const noexcept { return planes_[0].height(); }
  std::size_t pixel_count() const noexcept { return planes_[0].size(); }
  ColorSpace space() const noexcept { return space_; }
  double nominal_peak() const noexcept { return kNominalPeak; }

  ImagePlane& plane(int c) { return planes_[c]; }
  const ImagePlane& plane(int c) const { return planes_[c]; }
  std::array<ImagePlane, 3>& planes() noexcept { return planes_; }
  const std::array<ImagePlane, 3>& planes() const noexcept { return planes_; }

  bool same_shape(const ColorImage& other) const noexcept {
    return planes_[0].same_shape(other.planes_[0]);
  }

  friend bool operator==(const ColorImage&, const ColorImage&) = default;

 private:
  std::array<ImagePlane, 3> planes_;
  ColorSpace space_ = ColorSpace::kSrgb8BitScaled;
};

inline void require_space(const ColorImage& img, ColorSpace expected,
                          const char* operation) {
  if (img.space() != expected) {
    throw Error(ErrorKind::kWrongColorSpace,
                std::string(operation) + " expects " + to_string(expected) +
                    ", got " + to_string(img.space()));
  }
}

inline void clamp_samples(ImagePlane& plane, double lo, double hi) {
  for (double& v : plane.samples()) v = std::clamp(v, lo, hi);
}

inline void clamp_samples(ColorImage& img, double lo, double hi) {
  for (auto& p : img.planes()) clamp_samples(p, lo, hi);
}

inline double mean(const ImagePlane& plane) {
  double sum = 0.0;
  for (double v : plane.samples()) sum += v;
  return sum / static_cast<double>(plane.size());
}

/// Rec. 601 luma of an sRGB-scaled image.
inline ImagePlane luminance(const ColorImage& img) {
  ImagePlane out(img.width(), img.height());
  auto r = img.plane(0).samples();
  auto g = img.plane(1).samples();
  auto b = img.plane(2).samples();
  auto o = out.samples();
  for (std::size_t i = 0; i < o.size(); ++i)
    o[i] = 0.299 * r[i] + 0.587 * g[i] + 0.114 * b[i];
  return out;
}

}  // namespace aquaclean

#endif  // AQUACLEAN_IMAGE_HPP_
