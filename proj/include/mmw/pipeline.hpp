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


#ifndef MMW_PIPELINE_HPP
#define MMW_PIPELINE_HPP

#include <array>
#include <string_view>
#include <vector>

#include "mmw/hog.hpp"
#include "mmw/image.hpp"
#include "mmw/lbp.hpp"
#include "mmw/manifest.hpp"
#include "mmw/sample.hpp"
#include "mmw/synth.hpp"

namespace mmw {

/// Handcrafted descriptor choice for the extraction pipeline.
enum class Descriptor { Lbp, Hog };

const char* to_string(Descriptor d) noexcept;
Descriptor parse_descriptor(std::string_view text);
FeatureKind feature_kind(Descriptor d) noexcept;

struct ExtractOptions {
  Descriptor descriptor = Descriptor::Lbp;
  /// Indexed by BodyPart. Faces are equalized by default, torso and body are not.
  std::array<bool, 3> equalize{equalized_by_default(BodyPart::Face), equalized_by_default(BodyPart::Torso),
                               equalized_by_default(BodyPart::WholeBody)};
  LbpParams lbp;
  HogParams hog;

  bool equalizes(BodyPart part) const noexcept { return equalize[static_cast<std::size_t>(part)]; }
};

/// Optional equalization, then resize to the 100x150 descriptor geometry.
GrayImage descriptor_input(const GrayImage& crop, bool equalize);

FeatureVector extract_features(const GrayImage& crop, BodyPart part, const ExtractOptions& options);

/// Extracts every synthetic sample. Output order follows the input.
Dataset extract_dataset(const std::vector<SynthSample>& samples, const ExtractOptions& options);

/// Loads, optionally crops, and extracts every manifest image. When `boxes`
/// is non-empty each image is cropped by its (sample_id, part) box and an
/// image without a box is an error. Unreadable images raise with the sample
/// id in the message. Sorted by (part, subject, sample).
Dataset extract_manifest(const std::vector<ManifestEntry>& manifest, const ExtractOptions& options,
                         const std::vector<BoxAnnotation>& boxes = {});

/// Samples of one body part, in their original order.
Dataset select_part(const Dataset& data, BodyPart part);

}  // namespace mmw

#endif  // MMW_PIPELINE_HPP
