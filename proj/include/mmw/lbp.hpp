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

#ifndef MMW_LBP_HPP
#define MMW_LBP_HPP

#include <cstdint>
#include <vector>

#include "mmw/image.hpp"
#include "mmw/sample.hpp"

namespace mmw {

struct LbpParams {
  int radius = 1;
  int neighbors = 8;
  bool uniform = true;
  int block_width = 10;
  int block_height = 10;
};

/// Input geometry the blockwise descriptors are defined on.
inline constexpr int kDescriptorWidth = 100;
inline constexpr int kDescriptorHeight = 150;
inline constexpr int kLbpDim = 8850;

/// Sampling offset of neighbor `k` on a circle of `radius`, counter-clockwise
/// from east in image coordinates (y grows downward). Components within 1e-9
/// of an integer are snapped to it so axis neighbors hit the pixel grid.
struct NeighborOffset {
  double dx;
  double dy;
};
NeighborOffset neighbor_offset(int k, int neighbors, int radius);

/// Bit k is set iff the bilinearly sampled neighbor k is >= the center
/// (differences within 1e-9 count as ties).
/// (x, y) must be at least `radius` pixels away from every border.
std::uint32_t lbp_code(const GrayImage& img, int x, int y, const LbpParams& params = {});

/// Number of circular 0/1 transitions in the low `bits` bits of `code`.
int circular_transitions(std::uint32_t code, int bits);

/// Uniform-pattern bin for 8-neighbor codes: the 58 codes with at most two
/// transitions map to 0..57 in ascending code order, everything else to 58.
int uniform_bin(std::uint32_t code);
int uniform_bin(std::uint32_t code, int neighbors);
int lbp_histogram_bins(const LbpParams& params);

/// Blockwise L1-normalized LBP histograms for any image whose dimensions are
/// multiples of the block size. Blocks are visited row-major; pixels whose
/// sampling circle leaves the image are not tallied.
std::vector<double> lbp_block_histograms(const GrayImage& img, const LbpParams& params = {});

/// The 100x150 descriptor: 10x15 blocks of 59 bins = 8850 values.
FeatureVector extract_lbp(const GrayImage& img, const LbpParams& params = {});

}  // namespace mmw

#endif  // MMW_LBP_HPP
