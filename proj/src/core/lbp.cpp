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

#include "mmw/lbp.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "mmw/error.hpp"

namespace mmw {

namespace {

void check_params(const LbpParams& p) {
  if (p.radius < 1) fail(ErrorCode::InvalidArgument, "LBP radius must be >= 1");
  if (p.neighbors < 1 || p.neighbors > 16)
    fail(ErrorCode::InvalidArgument, "LBP neighbor count must be in [1, 16]");
  if (p.block_width < 1 || p.block_height < 1)
    fail(ErrorCode::InvalidArgument, "LBP block size must be positive");
}

double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < 1e-9 ? r : v;
}

struct Tap {
  int ix;
  int iy;
  double fx;
  double fy;
};

Tap make_tap(const NeighborOffset& o) {
  const double fx0 = std::floor(o.dx);
  const double fy0 = std::floor(o.dy);
  return {static_cast<int>(fx0), static_cast<int>(fy0), o.dx - fx0, o.dy - fy0};
}

// Nested linear interpolation; exact on constant neighborhoods.
double sample(const GrayImage& img, int x, int y, const Tap& t) {
  const int x0 = x + t.ix;
  const int y0 = y + t.iy;
  const double p00 = img.at(x0, y0);
  if (t.fx == 0.0 && t.fy == 0.0) return p00;
  if (t.fy == 0.0) return p00 + t.fx * (img.at(x0 + 1, y0) - p00);
  if (t.fx == 0.0) return p00 + t.fy * (img.at(x0, y0 + 1) - p00);
  const double p10 = img.at(x0 + 1, y0);
  const double p01 = img.at(x0, y0 + 1);
  const double p11 = img.at(x0 + 1, y0 + 1);
  const double top = p00 + t.fx * (p10 - p00);
  const double bottom = p01 + t.fx * (p11 - p01);
  return top + t.fy * (bottom - top);
}

std::vector<Tap> make_taps(const LbpParams& p) {
  std::vector<Tap> taps;
  taps.reserve(static_cast<std::size_t>(p.neighbors));
  for (int k = 0; k < p.neighbors; ++k) taps.push_back(make_tap(neighbor_offset(k, p.neighbors, p.radius)));
  return taps;
}

// Interpolated neighbors that equal the center in exact arithmetic can land a
// few ulps either side of it. With integer intensities, true differences are
// many orders of magnitude larger than this.
constexpr double kTieTolerance = 1e-9;

std::uint32_t code_at(const GrayImage& img, int x, int y, const std::vector<Tap>& taps) {
  const double center = static_cast<double>(img.at(x, y)) - kTieTolerance;
  std::uint32_t code = 0;
  for (std::size_t k = 0; k < taps.size(); ++k) {
    if (sample(img, x, y, taps[k]) >= center) code |= 1u << k;
  }
  return code;
}

struct UniformTable {
  std::vector<int> bins;
  explicit UniformTable(int neighbors) : bins(std::size_t{1} << neighbors) {
    const int catch_all = neighbors * (neighbors - 1) + 2;
    int next = 0;
    for (std::uint32_t c = 0; c < bins.size(); ++c)
      bins[c] = circular_transitions(c, neighbors) <= 2 ? next++ : catch_all;
  }
};

const UniformTable& table_for(int neighbors) {
  static const UniformTable t8(8);
  if (neighbors == 8) return t8;
  thread_local std::map<int, UniformTable> cache;
  auto it = cache.find(neighbors);
  if (it == cache.end()) it = cache.emplace(neighbors, UniformTable(neighbors)).first;
  return it->second;
}

}  // namespace

NeighborOffset neighbor_offset(int k, int neighbors, int radius) {
  const double theta = 2.0 * std::numbers::pi * k / neighbors;
  return {snap(radius * std::cos(theta)), snap(-radius * std::sin(theta))};
}

std::uint32_t lbp_code(const GrayImage& img, int x, int y, const LbpParams& params) {
  check_params(params);
  const int r = params.radius;
  if (x < r || y < r || x >= img.width() - r || y >= img.height() - r)
    fail(ErrorCode::OutOfRange, "LBP center (" + std::to_string(x) + "," + std::to_string(y) +
                                    ") is within radius " + std::to_string(r) + " of the border");
  return code_at(img, x, y, make_taps(params));
}

int circular_transitions(std::uint32_t code, int bits) {
  int n = 0;
  for (int i = 0; i < bits; ++i) {
    const std::uint32_t a = (code >> i) & 1u;
    const std::uint32_t b = (code >> ((i + 1) % bits)) & 1u;
    n += static_cast<int>(a != b);
  }
  return n;
}

int uniform_bin(std::uint32_t code) { return uniform_bin(code, 8); }

int uniform_bin(std::uint32_t code, int neighbors) {
  const auto& bins = table_for(neighbors).bins;
  if (code >= bins.size()) fail(ErrorCode::OutOfRange, "LBP code out of range");
  return bins[code];
}

int lbp_histogram_bins(const LbpParams& params) {
  return params.uniform ? params.neighbors * (params.neighbors - 1) + 3 : 1 << params.neighbors;
}

std::vector<double> lbp_block_histograms(const GrayImage& img, const LbpParams& params) {
  check_params(params);
  if (img.empty() || img.width() % params.block_width != 0 ||
      img.height() % params.block_height != 0) {
    fail(ErrorCode::DimMismatch, "image " + std::to_string(img.width()) + "x" +
                                     std::to_string(img.height()) +
                                     " is not a whole number of LBP blocks");
  }
  const int bx_count = img.width() / params.block_width;
  const int by_count = img.height() / params.block_height;
  const auto bins = static_cast<std::size_t>(lbp_histogram_bins(params));
  const auto taps = make_taps(params);
  const UniformTable* table = params.uniform ? &table_for(params.neighbors) : nullptr;
  const int r = params.radius;

  std::vector<double> out(static_cast<std::size_t>(bx_count * by_count) * bins, 0.0);
  std::vector<std::size_t> counts(bins);
  for (int by = 0; by < by_count; ++by) {
    for (int bx = 0; bx < bx_count; ++bx) {
      std::fill(counts.begin(), counts.end(), 0);
      std::size_t total = 0;
      for (int y = by * params.block_height; y < (by + 1) * params.block_height; ++y) {
        if (y < r || y >= img.height() - r) continue;
        for (int x = bx * params.block_width; x < (bx + 1) * params.block_width; ++x) {
          if (x < r || x >= img.width() - r) continue;
          const std::uint32_t code = code_at(img, x, y, taps);
          ++counts[table ? static_cast<std::size_t>(table->bins[code]) : code];
          ++total;
        }
      }
      if (total == 0) continue;
      double* h = out.data() + static_cast<std::size_t>(by * bx_count + bx) * bins;
      for (std::size_t b = 0; b < bins; ++b)
        h[b] = static_cast<double>(counts[b]) / static_cast<double>(total);
    }
  }
  return out;
}

FeatureVector extract_lbp(const GrayImage& img, const LbpParams& params) {
  if (img.width() != kDescriptorWidth || img.height() != kDescriptorHeight)
    fail(ErrorCode::DimMismatch, "LBP extraction expects a 100x150 image, got " +
                                     std::to_string(img.width()) + "x" +
                                     std::to_string(img.height()));
  FeatureVector fv;
  fv.kind = FeatureKind::Lbp;
  fv.values = lbp_block_histograms(img, params);
  return fv;
}

}  // namespace mmw
