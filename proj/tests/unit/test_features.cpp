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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "mmw/error.hpp"
#include "mmw/hog.hpp"
#include "mmw/lbp.hpp"
#include "test_support.hpp"

using namespace mmw;

// ---------------------------------------------------------------------------
// Oracles. These recompute everything per pixel from the definitions and do
// not call into the extractor internals.

namespace oracle {

double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < 1e-9 ? r : v;
}

double neighbor_value(const GrayImage& img, int x, int y, int k) {
  const double theta = 2.0 * std::numbers::pi * k / 8.0;
  const double sx = x + snap(std::cos(theta));
  const double sy = y + snap(-std::sin(theta));
  const int x0 = static_cast<int>(std::floor(sx));
  const int y0 = static_cast<int>(std::floor(sy));
  const double fx = sx - x0;
  const double fy = sy - y0;
  auto px = [&](int xx, int yy) {
    xx = std::min(xx, img.width() - 1);
    yy = std::min(yy, img.height() - 1);
    return static_cast<double>(img.at(xx, yy));
  };
  const double top = px(x0, y0) + fx * (px(x0 + 1, y0) - px(x0, y0));
  const double bottom = px(x0, y0 + 1) + fx * (px(x0 + 1, y0 + 1) - px(x0, y0 + 1));
  return top + fy * (bottom - top);
}

unsigned code(const GrayImage& img, int x, int y) {
  unsigned c = 0;
  for (int k = 0; k < 8; ++k)
    if (neighbor_value(img, x, y, k) - img.at(x, y) > -1e-9) c |= 1u << k;
  return c;
}

int transitions(unsigned c) {
  const auto b = static_cast<std::uint8_t>(c);
  return std::popcount(static_cast<unsigned>(static_cast<std::uint8_t>(b ^ std::rotl(b, 1))));
}

std::vector<int> uniform_table() {
  std::vector<int> t(256, 58);
  int next = 0;
  for (unsigned c = 0; c < 256; ++c)
    if (transitions(c) <= 2) t[c] = next++;
  return t;
}

std::vector<double> lbp(const GrayImage& img) {
  const auto table = uniform_table();
  const int bx = img.width() / 10, by = img.height() / 10;
  std::vector<double> out(static_cast<std::size_t>(bx * by * 59), 0.0);
  for (int b = 0; b < bx * by; ++b) {
    std::vector<std::size_t> counts(59, 0);
    std::size_t n = 0;
    for (int y = (b / bx) * 10; y < (b / bx) * 10 + 10; ++y)
      for (int x = (b % bx) * 10; x < (b % bx) * 10 + 10; ++x) {
        if (x < 1 || y < 1 || x > img.width() - 2 || y > img.height() - 2) continue;
        ++counts[static_cast<std::size_t>(table[code(img, x, y)])];
        ++n;
      }
    for (int k = 0; k < 59; ++k)
      out[static_cast<std::size_t>(b * 59 + k)] = static_cast<double>(counts[static_cast<std::size_t>(k)]) / static_cast<double>(n);
  }
  return out;
}

struct Grad {
  double gx, gy;
};

Grad gradient(const GrayImage& img, int x, int y) {
  auto px = [&](int xx, int yy) {
    return static_cast<double>(img.at(std::clamp(xx, 0, img.width() - 1), std::clamp(yy, 0, img.height() - 1)));
  };
  return {px(x + 1, y) - px(x - 1, y), px(x, y + 1) - px(x, y - 1)};
}

// Raw 8-bin histograms with linear orientation interpolation.
std::vector<double> hog_raw(const GrayImage& img) {
  const int bx = img.width() / 10, by = img.height() / 10;
  std::vector<double> out(static_cast<std::size_t>(bx * by * 8), 0.0);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      const Grad g = gradient(img, x, y);
      const double mag = std::sqrt(g.gx * g.gx + g.gy * g.gy);
      if (mag == 0.0) continue;
      double a = std::atan2(g.gy, g.gx);
      while (a < 0) a += std::numbers::pi;
      while (a >= std::numbers::pi) a -= std::numbers::pi;
      const double pos = a / (std::numbers::pi / 8.0);
      const int lo = std::min(static_cast<int>(pos), 7);
      const double t = pos - lo;
      const std::size_t blk = static_cast<std::size_t>((y / 10) * bx + x / 10);
      out[blk * 8 + static_cast<std::size_t>(lo)] += mag * (1.0 - t);
      out[blk * 8 + static_cast<std::size_t>((lo + 1) % 8)] += mag * t;
    }
  return out;
}

// Four-neighborhood normalization written out explicitly.
std::vector<double> hog_norm(const std::vector<double>& raw, int bx, int by, double clip) {
  std::vector<double> out(raw.size() * 4);
  const int offs[4][2] = {{-1, -1}, {0, -1}, {-1, 0}, {0, 0}};
  for (int j = 0; j < by; ++j)
    for (int i = 0; i < bx; ++i)
      for (int c = 0; c < 4; ++c) {
        const int sx = std::max(0, std::min(i + offs[c][0], bx - 2));
        const int sy = std::max(0, std::min(j + offs[c][1], by - 2));
        double sq = 0.0;
        for (int dy = 0; dy < 2; ++dy)
          for (int dx = 0; dx < 2; ++dx)
            for (int b = 0; b < 8; ++b) {
              const double v = raw[static_cast<std::size_t>(((sy + dy) * bx + sx + dx) * 8 + b)];
              sq += v * v;
            }
        const double e = std::sqrt(sq) + 1e-10;
        for (int b = 0; b < 8; ++b) {
          const double h = raw[static_cast<std::size_t>((j * bx + i) * 8 + b)];
          out[static_cast<std::size_t>(((j * bx + i) * 4 + c) * 8 + b)] = h == 0.0 ? 0.0 : std::min(h / e, clip);
        }
      }
  return out;
}

}  // namespace oracle

// ---------------------------------------------------------------------------

TEST_CASE("neighbor offsets are counter-clockwise from east") {
  CHECK(neighbor_offset(0, 8, 1).dx == 1.0);
  CHECK(neighbor_offset(0, 8, 1).dy == 0.0);
  CHECK(neighbor_offset(2, 8, 1).dx == 0.0);
  CHECK(neighbor_offset(2, 8, 1).dy == -1.0);  // north is up, i.e. y - 1
  CHECK(neighbor_offset(4, 8, 1).dx == -1.0);
  CHECK(neighbor_offset(6, 8, 1).dy == 1.0);
  CHECK(neighbor_offset(1, 8, 1).dx == doctest::Approx(std::sqrt(0.5)));
  CHECK(neighbor_offset(1, 8, 1).dy == doctest::Approx(-std::sqrt(0.5)));
}

TEST_CASE("lbp_code") {
  SUBCASE("constant image sets every bit") {
    const GrayImage img(3, 3, 42);
    CHECK(lbp_code(img, 1, 1) == 255u);
  }
  SUBCASE("strict maximum at the center clears every bit") {
    GrayImage img(3, 3, 10);
    img.at(1, 1) = 200;
    CHECK(lbp_code(img, 1, 1) == 0u);
  }
  SUBCASE("interpolated ties count as equal") {
    // n + e = 2c and ne = n + e - c make the north-east sample equal the center exactly.
    GrayImage img(3, 3, 0);
    img.at(1, 1) = 2;
    img.at(1, 0) = 3;  // north
    img.at(2, 1) = 1;  // east
    img.at(2, 0) = 2;  // north-east
    CHECK((lbp_code(img, 1, 1) & 0b10u) != 0u);
  }
  SUBCASE("random 3x3 patches match the per-bit oracle") {
    Pcg32 rng(99);
    for (int trial = 0; trial < 2000; ++trial) {
      const GrayImage img = testing::random_image(3, 3, rng, trial % 2 ? 255 : 3);
      CHECK(lbp_code(img, 1, 1) == oracle::code(img, 1, 1));
    }
  }
  SUBCASE("border pixels are rejected") {
    const GrayImage img(5, 5);
    CHECK_THROWS_AS(lbp_code(img, 0, 2), Error);
    CHECK_THROWS_AS(lbp_code(img, 2, 4), Error);
    CHECK_NOTHROW(lbp_code(img, 3, 3));
  }
}

TEST_CASE("uniform_bin census") {
  const auto table = oracle::uniform_table();
  int uniform = 0, other = 0;
  for (unsigned c = 0; c < 256; ++c) {
    CHECK(uniform_bin(c) == table[c]);
    CHECK(circular_transitions(c, 8) == oracle::transitions(c));
    (table[c] < 58 ? uniform : other)++;
  }
  CHECK(uniform == 58);
  CHECK(other == 198);
  CHECK(uniform_bin(0) == 0);
  CHECK(uniform_bin(255) == 57);
  CHECK(uniform_bin(0b01010101) == 58);
  CHECK(lbp_histogram_bins(LbpParams{}) == 59);
}

TEST_CASE("extract_lbp") {
  Pcg32 rng(1234);

  SUBCASE("dimension is 10 x 15 x 59") {
    const auto fv = extract_lbp(testing::random_image(100, 150, rng));
    CHECK(fv.dim() == 8850);
    CHECK(fv.kind == FeatureKind::Lbp);
  }

  SUBCASE("constant image gives a one-hot per block") {
    const auto fv = extract_lbp(GrayImage(100, 150, 128));
    for (std::size_t b = 0; b < 150; ++b)
      for (std::size_t k = 0; k < 59; ++k) CHECK(fv.values[b * 59 + k] == (k == 57 ? 1.0 : 0.0));
  }

  SUBCASE("random image equals the brute-force tally") {
    const GrayImage img = testing::random_image(100, 150, rng);
    CHECK(extract_lbp(img).values == oracle::lbp(img));
  }

  SUBCASE("block histograms sum to one") {
    const auto fv = extract_lbp(testing::random_image(100, 150, rng));
    for (std::size_t b = 0; b < 150; ++b) {
      const double s = std::accumulate(fv.values.begin() + static_cast<std::ptrdiff_t>(b * 59),
                                       fv.values.begin() + static_cast<std::ptrdiff_t>(b * 59 + 59), 0.0);
      CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
    }
  }

  SUBCASE("deterministic") {
    const GrayImage img = testing::random_image(100, 150, rng);
    CHECK(extract_lbp(img) == extract_lbp(img));
  }

  SUBCASE("wrong dimensions are rejected") {
    CHECK_THROWS_AS(extract_lbp(GrayImage(70, 90)), Error);
    CHECK_THROWS_AS(lbp_block_histograms(GrayImage(25, 30)), Error);
  }

  SUBCASE("invariant to increasing affine intensity maps") {
    for (int trial = 0; trial < 10; ++trial) {
      GrayImage img = testing::random_image(100, 150, rng, 120);
      GrayImage mapped = img;
      const int gain = 1 + static_cast<int>(rng.bounded(2));
      const int offset = static_cast<int>(rng.bounded(10));
      for (auto& p : mapped.pixels()) p = static_cast<std::uint8_t>(gain * p + offset);
      CHECK(extract_lbp(mapped) == extract_lbp(img));
    }
  }

  SUBCASE("axis-neighbor bits are invariant to any strictly increasing lookup table") {
    // Diagonal neighbors are interpolated, so only the four grid-aligned
    // comparisons are purely order-determined.
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<int> steps(256);
      for (int& s : steps) s = 1 + static_cast<int>(rng.bounded(3));
      std::vector<std::uint8_t> lut(256);
      int acc = 0;
      for (int v = 0; v < 256; ++v) {
        acc += steps[static_cast<std::size_t>(v)];
        lut[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(std::min(acc * 255 / 800, 255));
      }
      // Restrict inputs so the LUT is strictly increasing on them.
      GrayImage img(30, 30);
      for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(rng.bounded(256));
      std::vector<int> used;
      for (int v = 0; v < 256; ++v)
        if (v == 0 || lut[static_cast<std::size_t>(v)] != lut[static_cast<std::size_t>(v - 1)]) used.push_back(v);
      for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(used[p % used.size()]);
      GrayImage mapped = img;
      for (auto& p : mapped.pixels()) p = lut[p];
      for (int y = 1; y < 29; ++y)
        for (int x = 1; x < 29; ++x) CHECK((lbp_code(img, x, y) & 0x55u) == (lbp_code(mapped, x, y) & 0x55u));
    }
  }
}

TEST_CASE("LBP blockwise extractor equals the oracle on small images") {
  Pcg32 rng(4321);
  for (int trial = 0; trial < 100; ++trial) {
    const GrayImage img = testing::random_image(20, 30, rng, trial % 3 == 0 ? 4 : 255);
    CHECK(lbp_block_histograms(img) == oracle::lbp(img));
  }
}

TEST_CASE("image_gradients") {
  GrayImage img(3, 3, 0);
  img.at(2, 1) = 10;
  const auto g = image_gradients(img);
  CHECK(g[4].magnitude == 10.0);
  CHECK(g[4].angle == 0.0);
  // Replicated border: at x = 2 the difference is I(2) - I(1).
  CHECK(g[5].magnitude == 10.0);
  img = GrayImage(3, 3, 0);
  img.at(1, 2) = 10;
  CHECK(image_gradients(img)[4].angle == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("extract_hog") {
  Pcg32 rng(77);

  SUBCASE("dimension is 150 blocks x 32") {
    const auto fv = extract_hog(testing::random_image(100, 150, rng));
    CHECK(fv.dim() == 4800);
    CHECK(fv.kind == FeatureKind::Hog);
    CHECK(std::all_of(fv.values.begin(), fv.values.end(), [](double v) { return v >= 0.0 && v <= 0.2; }));
  }

  SUBCASE("constant image gives an all-zero descriptor") {
    const auto fv = extract_hog(GrayImage(100, 150, 90));
    CHECK(std::all_of(fv.values.begin(), fv.values.end(), [](double v) { return v == 0.0; }));
  }

  SUBCASE("vertical step edge puts all mass in the horizontal-gradient bin") {
    GrayImage img(100, 150, 20);
    for (int y = 0; y < 150; ++y)
      for (int x = 45; x < 100; ++x) img.at(x, y) = 220;
    const auto raw = hog_block_histograms(img);
    const auto expected = oracle::hog_raw(img);
    REQUIRE(raw.size() == expected.size());
    for (std::size_t i = 0; i < raw.size(); ++i) CHECK(raw[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    for (int by = 0; by < 15; ++by) {
      const double* h = raw.data() + static_cast<std::size_t>(by * 10 + 4) * 8;
      CHECK(h[0] == doctest::Approx(2 * 10 * 200.0));
      for (int b = 1; b < 8; ++b) CHECK(h[b] == 0.0);
      for (int bx = 0; bx < 10; ++bx)
        if (bx != 4)
          for (int b = 0; b < 8; ++b) CHECK(raw[static_cast<std::size_t>((by * 10 + bx) * 8 + b)] == 0.0);
    }
  }

  SUBCASE("random images match the brute-force gradient and normalization oracles") {
    for (int trial = 0; trial < 5; ++trial) {
      const GrayImage img = testing::random_image(100, 150, rng);
      const auto raw = hog_block_histograms(img);
      const auto expected_raw = oracle::hog_raw(img);
      for (std::size_t i = 0; i < raw.size(); ++i) CHECK(raw[i] == doctest::Approx(expected_raw[i]).epsilon(1e-12));
      const auto desc = extract_hog(img).values;
      const auto expected = oracle::hog_norm(expected_raw, 10, 15, 0.2);
      for (std::size_t i = 0; i < desc.size(); ++i) CHECK(desc[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
  }

  SUBCASE("binning conserves gradient magnitude per block") {
    const GrayImage img = testing::random_image(100, 150, rng);
    const auto raw = hog_block_histograms(img);
    const auto grads = image_gradients(img);
    std::vector<double> mass(150, 0.0);
    for (int y = 0; y < 150; ++y)
      for (int x = 0; x < 100; ++x) mass[static_cast<std::size_t>((y / 10) * 10 + x / 10)] += grads[static_cast<std::size_t>(y * 100 + x)].magnitude;
    for (std::size_t b = 0; b < 150; ++b) {
      const double s = std::accumulate(raw.begin() + static_cast<std::ptrdiff_t>(b * 8),
                                       raw.begin() + static_cast<std::ptrdiff_t>(b * 8 + 8), 0.0);
      CHECK(s == doctest::Approx(mass[b]).epsilon(1e-6));
    }
  }

  SUBCASE("adding a constant changes nothing") {
    const GrayImage img = testing::random_image(100, 150, rng, 200);
    GrayImage shifted = img;
    for (auto& p : shifted.pixels()) p = static_cast<std::uint8_t>(p + 55);
    CHECK(extract_hog(shifted) == extract_hog(img));
  }

  SUBCASE("raw histograms scale linearly, normalized descriptor is scale invariant") {
    const GrayImage img = testing::random_image(100, 150, rng, 25);
    const auto raw = hog_block_histograms(img);
    const auto desc = extract_hog(img).values;
    for (int k : {2, 10}) {
      GrayImage scaled = img;
      for (auto& p : scaled.pixels()) p = static_cast<std::uint8_t>(p * k);
      const auto raw_k = hog_block_histograms(scaled);
      for (std::size_t i = 0; i < raw.size(); ++i) CHECK(raw_k[i] == doctest::Approx(k * raw[i]).epsilon(1e-9));
      const auto desc_k = extract_hog(scaled).values;
      for (std::size_t i = 0; i < desc.size(); ++i) CHECK(desc_k[i] == doctest::Approx(desc[i]).epsilon(1e-9));
    }
  }

  SUBCASE("empty-gradient blocks produce zero sub-vectors") {
    GrayImage img(100, 150, 50);
    for (int y = 0; y < 10; ++y)
      for (int x = 0; x < 10; ++x) img.at(x, y) = static_cast<std::uint8_t>(rng.bounded(256));
    const auto desc = extract_hog(img).values;
    // Block (5, 7) is far from the textured corner.
    const std::size_t blk = 7 * 10 + 5;
    for (std::size_t i = 0; i < 32; ++i) CHECK(desc[blk * 32 + i] == 0.0);
    CHECK(std::all_of(desc.begin(), desc.end(), [](double v) { return std::isfinite(v); }));
  }

  SUBCASE("deterministic and dimension-checked") {
    const GrayImage img = testing::random_image(100, 150, rng);
    CHECK(extract_hog(img) == extract_hog(img));
    CHECK_THROWS_AS(extract_hog(GrayImage(250, 450)), Error);
    CHECK_THROWS_AS(hog_normalize(std::vector<double>(10), 2, 2), Error);
  }
}
