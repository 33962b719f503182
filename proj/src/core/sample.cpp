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

#include "mmw/sample.hpp"

#include <string>

#include "mmw/error.hpp"

namespace mmw {

std::string_view to_string(Pose pose) noexcept {
  return pose == Pose::Frontal ? "frontal" : "lateral";
}

Pose parse_pose(std::string_view text) {
  if (text == "frontal") return Pose::Frontal;
  if (text == "lateral") return Pose::Lateral;
  fail(ErrorCode::Parse, "unknown pose '" + std::string(text) + "'");
}

std::string_view to_string(FeatureKind kind) noexcept {
  switch (kind) {
    case FeatureKind::Lbp: return "lbp";
    case FeatureKind::Hog: return "hog";
    case FeatureKind::Embedding: return "embedding";
    case FeatureKind::Fused: return "fused";
  }
  return "?";
}

}  // namespace mmw
