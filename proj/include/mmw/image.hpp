// Copyright 2026 The mmwtex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MMW_IMAGE_HPP
#define MMW_IMAGE_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mmw {

/// 8-bit grayscale raster, row-major.
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 0);
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return pixels_.empty(); }

  std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return pixels_[index(x, y)]; }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  bool operator==(const GrayImage&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

enum class BodyPart { Face, Torso, WholeBody };

struct Size {
  int width = 0;
  int height = 0;
  bool operator==(const Size&) const = default;
};

/// Approximate bounding-box size of each body part in a full scan.
Size nominal_crop(BodyPart part) noexcept;

std::string_view to_string(BodyPart part) noexcept;
BodyPart parse_body_part(std::string_view text);

struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

/// Throws OutOfRange unless `box` lies fully inside `img`.
GrayImage crop(const GrayImage& img, const Rect& box);

/// Bilinear resampling with center-aligned mapping
/// src = (dst + 0.5) * (in / out) - 0.5, clamped to the image, and
/// round-half-up to integer levels.
GrayImage resize_bilinear(const GrayImage& img, int out_width, int out_height);

/// Global 256-level CDF equalization:
/// level v -> round((cdf(v) - cdf_min) / (N - cdf_min) * 255).
/// A single-level image is returned unchanged.
GrayImage equalize_histogram(const GrayImage& img);

/// Whether a body part is equalized before feature extraction by default.
/// Only faces are.
bool equalized_by_default(BodyPart part) noexcept;

// Binary PGM (P5), maxval 255.
GrayImage read_pgm(const std::filesystem::path& path);
GrayImage decode_pgm(std::string_view bytes);
void write_pgm(const std::filesystem::path& path, const GrayImage& img);
std::string encode_pgm(const GrayImage& img);

/// One line of a bounding-box sidecar: `sample_id part x y w h`.
struct BoxAnnotation {
  std::string sample_id;
  BodyPart part = BodyPart::Face;
  Rect box;
};

std::vector<BoxAnnotation> parse_box_sidecar(std::string_view text);
std::vector<BoxAnnotation> read_box_sidecar(const std::filesystem::path& path);

}  // namespace mmw

#endif  // MMW_IMAGE_HPP
