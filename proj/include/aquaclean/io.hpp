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

// Binary PPM (P6) and PGM (P5) reading and writing, maxval 255.

#ifndef AQUACLEAN_IO_HPP_
#define AQUACLEAN_IO_HPP_

#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "aquaclean/image.hpp"

namespace aquaclean {

namespace io_detail {

class HeaderReader {
 public:
  HeaderReader(const std::vector<std::uint8_t>& bytes, const std::string& path)
      : bytes_(bytes), path_(path) {}

  void skip_whitespace_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  int read_uint(const char* what) {
    skip_whitespace_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_]))
      fail(std::string("expected ") + what);
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > (1L << 24)) fail(std::string(what) + " too large");
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void consume_single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
      fail("missing whitespace after maxval");
    ++pos_;
  }

  std::size_t position() const { return pos_; }

  [[noreturn]] void fail(const std::string& reason) const {
    throw Error(ErrorKind::kMalformedHeader, path_ + ": " + reason);
  }

 private:
  const std::vector<std::uint8_t>& bytes_;
  const std::string& path_;
  std::size_t pos_ = 2;
};

inline std::vector<std::uint8_t> read_all(const std::string& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec))
    throw Error(ErrorKind::kFileNotFound, path + ": no such file");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kFileNotFound, path + ": cannot open");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::uint8_t quantize(double v) {
  if (!(v > 0.0)) return 0;  // also maps NaN to 0
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::floor(v + 0.5));
}

inline void write_bytes(const std::string& path, const std::string& header,
                        const std::vector<std::uint8_t>& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoError, path + ": cannot open for writing");
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(body.data()),
            static_cast<std::streamsize>(body.size()));
  if (!out) throw Error(ErrorKind::kIoError, path + ": write failed");
}

}  // namespace io_detail

/// Loads a binary PPM (P6) or PGM (P5). Gray inputs are replicated into all
/// three planes. The result is always in SRGB_8BIT_SCALED.
inline ColorImage load_image(const std::string& path) {
  const auto bytes = io_detail::read_all(path);
  if (bytes.size() >= 8 && bytes[0] == 0x89 && bytes[1] == 'P' &&
      bytes[2] == 'N' && bytes[3] == 'G') {
    throw Error(ErrorKind::kUnsupportedFormat,
                path + ": PNG input is not supported by this build");
  }
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
    throw Error(ErrorKind::kUnsupportedFormat,
                path + ": not a binary PPM/PGM (P5/P6) file");

  const int channels = bytes[1] == '6' ? 3 : 1;
  io_detail::HeaderReader header(bytes, path);
  const int width = header.read_uint("width");
  const int height = header.read_uint("height");
  const int maxval = header.read_uint("maxval");
  if (width < 1 || height < 1) header.fail("zero image dimension");
  if (maxval != 255)
    throw Error(ErrorKind::kUnsupportedFormat,
                path + ": maxval " + std::to_string(maxval) + " (only 255)");
  header.consume_single_whitespace();

  const std::size_t expected =
      static_cast<std::size_t>(width) * height * channels;
  const std::size_t start = header.position();
  if (bytes.size() - start < expected)
    header.fail("truncated raster: expected " + std::to_string(expected) +
                " bytes, found " + std::to_string(bytes.size() - start));

  ColorImage img(width, height, ColorSpace::kSrgb8BitScaled);
  const std::uint8_t* p = bytes.data() + start;
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    for (int c = 0; c < 3; ++c)
      img.plane(c).samples()[i] = p[channels == 3 ? c : 0];
    p += channels;
  }
  return img;
}

/// Writes a P6 file; samples are clamped to [0, 255] and rounded half-up.
inline void save_image(const ColorImage& img, const std::string& path) {
  require_space(img, ColorSpace::kSrgb8BitScaled, "save_image");
  std::vector<std::uint8_t> body(img.pixel_count() * 3);
  for (std::size_t i = 0; i < img.pixel_count(); ++i)
    for (int c = 0; c < 3; ++c)
      body[3 * i + c] = io_detail::quantize(img.plane(c).samples()[i]);
  io_detail::write_bytes(path,
                         "P6\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n255\n",
                         body);
}

/// Writes a single plane as P5 using the same quantization as save_image.
inline void save_plane(const ImagePlane& plane, const std::string& path) {
  std::vector<std::uint8_t> body(plane.size());
  for (std::size_t i = 0; i < plane.size(); ++i)
    body[i] = io_detail::quantize(plane.samples()[i]);
  io_detail::write_bytes(path,
                         "P5\n" + std::to_string(plane.width()) + " " +
                             std::to_string(plane.height()) + "\n255\n",
                         body);
}

}  // namespace aquaclean

#endif  // AQUACLEAN_IO_HPP_
