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

#ifndef MMW_HOG_HPP
#define MMW_HOG_HPP

#include <vector>

#include "mmw/image.hpp"
#include "mmw/sample.hpp"

namespace mmw {

struct HogParams {
  int orientations = 8;
  int block_width = 10;
  int block_height = 10;
  double norm_clip = 0.2;
};

inline constexpr int kHogDim = 4800;
inline constexpr double kHogEpsilon = 1e-10;

struct Gradient {
  double magnitude;
  double angle;  // unsigned, in [0, pi)
};

/// Centered differences with replicated borders: gx = I(x+1) - I(x-1),
/// gy = I(y+1) - I(y-1).
std::vector<Gradient> image_gradients(const GrayImage& img);

/// Raw magnitude-weighted orientation histograms, one per block, row-major.
/// Orientation bin b is centered at b*pi/orientations; each pixel's magnitude
/// is split linearly between the two nearest bins (circularly).
std::vector<double> hog_block_histograms(const GrayImage& img, const HogParams& params = {});

/// Four-neighborhood normalization of raw block histograms laid out on a
/// blocks_x by blocks_y grid. Each block yields four clipped copies, one per
/// 2x2 neighborhood that contains it (offsets (-1,-1), (0,-1), (-1,0), (0,0));
/// neighborhoods falling off the grid are clamped to the nearest valid one.
std::vector<double> hog_normalize(const std::vector<double>& raw, int blocks_x, int blocks_y,
                                  const HogParams& params = {});

/// Full descriptor for any image whose dimensions are multiples of the block size.
std::vector<double> hog_descriptor(const GrayImage& img, const HogParams& params = {});

/// The 100x150 descriptor: 150 blocks of 8x4 values = 4800.
FeatureVector extract_hog(const GrayImage& img, const HogParams& params = {});

}  // namespace mmw

#endif  // MMW_HOG_HPP
