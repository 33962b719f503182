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

#include "mmw/hog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "mmw/error.hpp"
#include "mmw/lbp.hpp"

namespace mmw {

namespace {

void check_params(const HogParams& p) {
  if (p.orientations < 1) fail(ErrorCode::InvalidArgument, "HOG needs at least one orientation bin");
  if (p.block_width < 1 || p.block_height < 1)
    fail(ErrorCode::InvalidArgument, "HOG block size must be positive");
  if (!(p.norm_clip > 0.0)) fail(ErrorCode::InvalidArgument, "HOG clip value must be positive");
}

void check_geometry(const GrayImage& img, const HogParams& p) {
  if (img.empty() || img.width() % p.block_width != 0 || img.height() % p.block_height != 0)
    fail(ErrorCode::DimMismatch, "image " + std::to_string(img.width()) + "x" +
                                     std::to_string(img.height()) +
                                     " is not a whole number of HOG blocks");
}

}  // namespace

std::vector<Gradient> image_gradients(const GrayImage& img) {
  const int w = img.width();
  const int h = img.height();
  std::vector<Gradient> out(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (int y = 0; y < h; ++y) {
    const int ym = std::max(y - 1, 0);
    const int yp = std::min(y + 1, h - 1);
    for (int x = 0; x < w; ++x) {
      const int xm = std::max(x - 1, 0);
      const int xp = std::min(x + 1, w - 1);
      const double gx = static_cast<double>(img.at(xp, y)) - img.at(xm, y);
      const double gy = static_cast<double>(img.at(x, yp)) - img.at(x, ym);
      double angle = std::atan2(gy, gx);
      if (angle < 0.0) angle += std::numbers::pi;
      if (angle >= std::numbers::pi) angle -= std::numbers::pi;
      out[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)] =
          {std::hypot(gx, gy), angle};
    }
  }
  return out;
}

std::vector<double> hog_block_histograms(const GrayImage& img, const HogParams& params) {
  check_params(params);
  check_geometry(img, params);
  const int bins = params.orientations;
  const int bx_count = img.width() / params.block_width;
  const double bin_width = std::numbers::pi / bins;
  const auto grads = image_gradients(img);

  std::vector<double> hist(static_cast<std::size_t>(bx_count) *
                               static_cast<std::size_t>(img.height() / params.block_height) *
                               static_cast<std::size_t>(bins),
                           0.0);
  for (int y = 0; y < img.height(); ++y) {
    const int by = y / params.block_height;
    for (int x = 0; x < img.width(); ++x) {
      const Gradient& g = grads[static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width()) +
                                static_cast<std::size_t>(x)];
      if (g.magnitude == 0.0) continue;
      const double o = g.angle / bin_width;
      int b0 = static_cast<int>(std::floor(o));
      double frac = o - b0;
      if (b0 >= bins) {
        b0 = 0;
        frac = 0.0;
      }
      const int b1 = (b0 + 1) % bins;
      double* h = hist.data() +
                  static_cast<std::size_t>(by * bx_count + x / params.block_width) *
                      static_cast<std::size_t>(bins);
      h[b0] += g.magnitude * (1.0 - frac);
      h[b1] += g.magnitude * frac;
    }
  }
  return hist;
}

std::vector<double> hog_normalize(const std::vector<double>& raw, int blocks_x, int blocks_y,
                                  const HogParams& params) {
  check_params(params);
  const auto bins = static_cast<std::size_t>(params.orientations);
  if (blocks_x < 1 || blocks_y < 1 ||
      raw.size() != static_cast<std::size_t>(blocks_x * blocks_y) * bins)
    fail(ErrorCode::DimMismatch, "raw HOG histogram size does not match the block grid");

  const int span_x = std::min(2, blocks_x);
  const int span_y = std::min(2, blocks_y);
  const int nx = blocks_x - span_x + 1;
  const int ny = blocks_y - span_y + 1;

  auto block = [&](int bx, int by) {
    return raw.data() + static_cast<std::size_t>(by * blocks_x + bx) * bins;
  };

  std::vector<double> energy(static_cast<std::size_t>(nx * ny));
  for (int sy = 0; sy < ny; ++sy) {
    for (int sx = 0; sx < nx; ++sx) {
      double sq = 0.0;
      for (int dy = 0; dy < span_y; ++dy)
        for (int dx = 0; dx < span_x; ++dx) {
          const double* h = block(sx + dx, sy + dy);
          for (std::size_t b = 0; b < bins; ++b) sq += h[b] * h[b];
        }
      energy[static_cast<std::size_t>(sy * nx + sx)] = std::sqrt(sq) + kHogEpsilon;
    }
  }

  static constexpr std::array<std::array<int, 2>, 4> kOffsets{{{-1, -1}, {0, -1}, {-1, 0}, {0, 0}}};
  std::vector<double> out(raw.size() * 4, 0.0);
  for (int by = 0; by < blocks_y; ++by) {
    for (int bx = 0; bx < blocks_x; ++bx) {
      const double* h = block(bx, by);
      double* dst = out.data() + static_cast<std::size_t>(by * blocks_x + bx) * bins * 4;
      for (std::size_t c = 0; c < kOffsets.size(); ++c) {
        const int sx = std::clamp(bx + kOffsets[c][0], 0, nx - 1);
        const int sy = std::clamp(by + kOffsets[c][1], 0, ny - 1);
        const double e = energy[static_cast<std::size_t>(sy * nx + sx)];
        for (std::size_t b = 0; b < bins; ++b)
          dst[c * bins + b] = h[b] == 0.0 ? 0.0 : std::min(h[b] / e, params.norm_clip);
      }
    }
  }
  return out;
}

std::vector<double> hog_descriptor(const GrayImage& img, const HogParams& params) {
  const auto raw = hog_block_histograms(img, params);
  return hog_normalize(raw, img.width() / params.block_width, img.height() / params.block_height,
                       params);
}

FeatureVector extract_hog(const GrayImage& img, const HogParams& params) {
  if (img.width() != kDescriptorWidth || img.height() != kDescriptorHeight)
    fail(ErrorCode::DimMismatch, "HOG extraction expects a 100x150 image, got " +
                                     std::to_string(img.width()) + "x" +
                                     std::to_string(img.height()));
  FeatureVector fv;
  fv.kind = FeatureKind::Hog;
  fv.values = hog_descriptor(img, params);
  return fv;
}

}  // namespace mmw
