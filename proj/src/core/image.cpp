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

#include "mmw/image.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <string>

#include "mmw/error.hpp"
#include "text_util.hpp"

namespace mmw {

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) fail(ErrorCode::InvalidArgument, "negative image dimensions");
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 0 || height < 0) fail(ErrorCode::InvalidArgument, "negative image dimensions");
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    fail(ErrorCode::InvalidArgument,
         "pixel buffer holds " + std::to_string(pixels_.size()) + " values, expected " +
             std::to_string(width) + "x" + std::to_string(height));
}

Size nominal_crop(BodyPart part) noexcept {
  switch (part) {
    case BodyPart::Face: return {70, 90};
    case BodyPart::Torso: return {120, 170};
    case BodyPart::WholeBody: return {250, 450};
  }
  return {};
}

std::string_view to_string(BodyPart part) noexcept {
  switch (part) {
    case BodyPart::Face: return "face";
    case BodyPart::Torso: return "torso";
    case BodyPart::WholeBody: return "wholebody";
  }
  return "?";
}

BodyPart parse_body_part(std::string_view text) {
  if (text == "face") return BodyPart::Face;
  if (text == "torso") return BodyPart::Torso;
  if (text == "wholebody" || text == "body") return BodyPart::WholeBody;
  fail(ErrorCode::Parse, "unknown body part '" + std::string(text) + "'");
}

bool equalized_by_default(BodyPart part) noexcept { return part == BodyPart::Face; }

GrayImage crop(const GrayImage& img, const Rect& box) {
  if (box.width <= 0 || box.height <= 0 || box.x < 0 || box.y < 0 ||
      box.x + box.width > img.width() || box.y + box.height > img.height()) {
    fail(ErrorCode::OutOfRange,
         "crop box (" + std::to_string(box.x) + "," + std::to_string(box.y) + "," +
             std::to_string(box.width) + "," + std::to_string(box.height) +
             ") does not fit inside a " + std::to_string(img.width()) + "x" +
             std::to_string(img.height()) + " image");
  }
  GrayImage out(box.width, box.height);
  for (int y = 0; y < box.height; ++y) {
    const auto src = img.pixels().subspan(
        static_cast<std::size_t>(box.y + y) * static_cast<std::size_t>(img.width()) +
            static_cast<std::size_t>(box.x),
        static_cast<std::size_t>(box.width));
    std::copy(src.begin(), src.end(),
              out.pixels().begin() + static_cast<std::ptrdiff_t>(y) * box.width);
  }
  return out;
}

namespace {

struct Tap {
  int lo;
  int hi;
  double frac;
};

// Source taps for every destination index along one axis.
std::vector<Tap> axis_taps(int in, int out) {
  std::vector<Tap> taps(static_cast<std::size_t>(out));
  const double scale = static_cast<double>(in) / static_cast<double>(out);
  for (int d = 0; d < out; ++d) {
    double s = (d + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(in - 1));
    const int lo = static_cast<int>(std::floor(s));
    const int hi = std::min(lo + 1, in - 1);
    taps[static_cast<std::size_t>(d)] = {lo, hi, s - lo};
  }
  return taps;
}

}  // namespace

GrayImage resize_bilinear(const GrayImage& img, int out_width, int out_height) {
  if (out_width < 1 || out_height < 1)
    fail(ErrorCode::InvalidArgument, "resize target dimensions must be at least 1x1");
  if (img.empty()) fail(ErrorCode::InvalidArgument, "cannot resize an empty image");

  const auto xs = axis_taps(img.width(), out_width);
  const auto ys = axis_taps(img.height(), out_height);
  GrayImage out(out_width, out_height);
  for (int y = 0; y < out_height; ++y) {
    const Tap& ty = ys[static_cast<std::size_t>(y)];
    for (int x = 0; x < out_width; ++x) {
      const Tap& tx = xs[static_cast<std::size_t>(x)];
      const double p00 = img.at(tx.lo, ty.lo);
      const double p10 = img.at(tx.hi, ty.lo);
      const double p01 = img.at(tx.lo, ty.hi);
      const double p11 = img.at(tx.hi, ty.hi);
      const double top = p00 + tx.frac * (p10 - p00);
      const double bottom = p01 + tx.frac * (p11 - p01);
      const double v = top + ty.frac * (bottom - top);
      out.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
    }
  }
  return out;
}

GrayImage equalize_histogram(const GrayImage& img) {
  std::array<std::size_t, 256> hist{};
  for (std::uint8_t p : img.pixels()) ++hist[p];

  std::array<std::size_t, 256> cdf{};
  std::size_t running = 0;
  for (std::size_t v = 0; v < 256; ++v) {
    running += hist[v];
    cdf[v] = running;
  }
  const std::size_t total = running;
  std::size_t cdf_min = 0;
  for (std::size_t v = 0; v < 256; ++v) {
    if (hist[v] != 0) {
      cdf_min = cdf[v];
      break;
    }
  }
  if (total == cdf_min) return img;

  std::array<std::uint8_t, 256> lut{};
  const double denom = static_cast<double>(total - cdf_min);
  for (std::size_t v = 0; v < 256; ++v) {
    const double c = cdf[v] < cdf_min ? 0.0 : static_cast<double>(cdf[v] - cdf_min);
    lut[v] = static_cast<std::uint8_t>(std::floor(c / denom * 255.0 + 0.5));
  }
  GrayImage out = img;
  for (std::uint8_t& p : out.pixels()) p = lut[p];
  return out;
}

// ---------------------------------------------------------------------------
// PGM

namespace {

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string_view next_pgm_token(std::string_view bytes, std::size_t& pos) {
  for (;;) {
    while (pos < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    if (pos < bytes.size() && bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  return bytes.substr(start, pos - start);
}

}  // namespace

GrayImage decode_pgm(std::string_view bytes) {
  std::size_t pos = 0;
  if (next_pgm_token(bytes, pos) != "P5") fail(ErrorCode::BadHeader, "not a binary PGM (P5) image");
  int w = 0, h = 0, maxval = 0;
  if (!detail::parse_number(next_pgm_token(bytes, pos), w) ||
      !detail::parse_number(next_pgm_token(bytes, pos), h) ||
      !detail::parse_number(next_pgm_token(bytes, pos), maxval) || w <= 0 || h <= 0) {
    fail(ErrorCode::BadHeader, "malformed PGM header");
  }
  if (maxval != 255) fail(ErrorCode::BadHeader, "only 8-bit PGM (maxval 255) is supported");
  ++pos;  // single whitespace byte after maxval
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (pos > bytes.size() || bytes.size() - pos < n)
    fail(ErrorCode::TruncatedPayload, "PGM pixel data is truncated");
  std::vector<std::uint8_t> px(n);
  std::copy_n(bytes.data() + pos, n, reinterpret_cast<char*>(px.data()));
  return GrayImage(w, h, std::move(px));
}

GrayImage read_pgm(const std::filesystem::path& path) {
  try {
    return decode_pgm(detail::read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Io) throw;
    fail(e.code(), path.string() + ": " + e.what());
  }
}

std::string encode_pgm(const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) +
                    "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels().data()), img.pixels().size());
  return out;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& img) {
  detail::write_file(path, encode_pgm(img));
}

// ---------------------------------------------------------------------------
// Bounding-box sidecar

std::vector<BoxAnnotation> parse_box_sidecar(std::string_view text) {
  std::vector<BoxAnnotation> out;
  std::size_t lineno = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++lineno;
    const auto fields = detail::split_ws(line);
    if (fields.empty() || fields[0].front() == '#') continue;
    BoxAnnotation a;
    if (fields.size() != 6 || !detail::parse_number(fields[2], a.box.x) ||
        !detail::parse_number(fields[3], a.box.y) ||
        !detail::parse_number(fields[4], a.box.width) ||
        !detail::parse_number(fields[5], a.box.height)) {
      fail(ErrorCode::Parse, "box sidecar line " + std::to_string(lineno) +
                                 ": expected 'sample_id part x y w h'");
    }
    a.sample_id = std::string(fields[0]);
    a.part = parse_body_part(fields[1]);
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<BoxAnnotation> read_box_sidecar(const std::filesystem::path& path) {
  return parse_box_sidecar(detail::read_file(path));
}

}  // namespace mmw
