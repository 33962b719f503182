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

#ifndef MMW_SAMPLE_HPP
#define MMW_SAMPLE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "mmw/image.hpp"

namespace mmw {

enum class Pose { Frontal, Lateral };

std::string_view to_string(Pose pose) noexcept;
Pose parse_pose(std::string_view text);

/// One scan of one body part.
struct SampleRecord {
  std::string subject_id;
  std::string sample_id;
  BodyPart part = BodyPart::Face;
  Pose pose = Pose::Frontal;
  bool occluded = false;

  bool operator==(const SampleRecord&) const = default;
};

enum class FeatureKind { Lbp, Hog, Embedding, Fused };

std::string_view to_string(FeatureKind kind) noexcept;

struct FeatureVector {
  FeatureKind kind = FeatureKind::Embedding;
  BodyPart part = BodyPart::Face;
  std::vector<double> values;

  std::size_t dim() const noexcept { return values.size(); }
  bool operator==(const FeatureVector&) const = default;
};

/// A feature vector together with the scan it was computed from.
struct Sample {
  SampleRecord record;
  FeatureVector feature;

  bool operator==(const Sample&) const = default;
};

using Dataset = std::vector<Sample>;

}  // namespace mmw

#endif  // MMW_SAMPLE_HPP
