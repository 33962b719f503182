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

#ifndef MMW_SYNTH_HPP
#define MMW_SYNTH_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "mmw/image.hpp"
#include "mmw/rng.hpp"
#include "mmw/sample.hpp"

namespace mmw {

/// Seeded generator of mmW-like body-part crops.
///
/// For every subject and part a base texture is drawn: standard-normal white
/// noise at the part's nominal crop size, box-filtered with width
/// `texture_scale` (edges replicated), then rescaled to mean 128 and standard
/// deviation 40. Each sample is the base plus N(0, intra_noise^2) per pixel,
/// rounded half-up and clamped to [0, 255]. Lateral samples first shift the
/// base right by `pose_shift` pixels with edge replication. With
/// `identity_signal` off every sample draws its own base texture, so nothing
/// ties a sample to its subject.
///
/// Random streams: subject s, part index p (Face 0, Torso 1, WholeBody 2)
/// uses Pcg32(seed, 2 * (3s + p)) for its base texture and
/// Pcg32(seed, 2 * (3s + p) + 1) for per-sample noise, consumed in sample
/// order (frontal samples first, then lateral).
struct SynthConfig {
  std::size_t subjects = 50;
  std::size_t samples_per_pose = 4;
  std::vector<BodyPart> parts{BodyPart::Face, BodyPart::Torso, BodyPart::WholeBody};
  double intra_noise = 3.0;
  int pose_shift = 4;
  int texture_scale = 3;
  bool identity_signal = true;
  std::uint64_t seed = 0;
};

void validate(const SynthConfig& cfg);

struct SynthSample {
  SampleRecord record;
  GrayImage image;
};

/// Records ordered by part (config order), subject, pose, index.
/// Subject ids are `s000`, `s001`, ...; sample ids `s000_f0`, `s000_l1`, ...
/// (the sample id names the scan and is shared across parts).
std::vector<SynthSample> generate(const SynthConfig& cfg);

/// Box-filtered, standardized texture used as a subject's base image.
GrayImage synth_texture(Size size, int texture_scale, Pcg32& rng);

/// Writes `<dir>/<part>/<sample_id>.pgm` for every sample, a combined
/// `<dir>/manifest.csv`, and one `<dir>/<part>/manifest.csv` per part.
/// Returns the combined manifest path.
std::filesystem::path write_dataset(const std::vector<SynthSample>& samples,
                                    const std::filesystem::path& dir);

}  // namespace mmw

#endif  // MMW_SYNTH_HPP
