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

#ifndef MMW_FEATURE_IO_HPP
#define MMW_FEATURE_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "mmw/sample.hpp"

namespace mmw {

/// `MMWFEAT 1` text format:
///
///     MMWFEAT 1 <dim> <count>
///     <subject_id> <sample_id> <part> v1 ... v<dim>     (count lines)
///
/// Values are written in shortest round-trip form, so reading back is
/// bit-exact. The format carries identity and body part only; pose and
/// occlusion come from the dataset manifest.
std::string write_features(const Dataset& samples);

/// Parses and validates a feature file. Every violation is reported with a
/// distinct error code (BadHeader, TruncatedPayload, DimMismatch, NonFinite,
/// Parse); nothing is repaired. Records get `kind`, pose Frontal and
/// occluded = false.
Dataset read_features(std::string_view bytes, FeatureKind kind = FeatureKind::Embedding);

void save_features(const std::filesystem::path& path, const Dataset& samples);
Dataset load_features(const std::filesystem::path& path,
                      FeatureKind kind = FeatureKind::Embedding);

FeatureVector l2_normalize(const FeatureVector& v);

}  // namespace mmw

#endif  // MMW_FEATURE_IO_HPP
