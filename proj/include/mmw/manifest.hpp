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

#ifndef MMW_MANIFEST_HPP
#define MMW_MANIFEST_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mmw/sample.hpp"

namespace mmw {

/// One manifest row: `sample_id,subject_id,part,pose,occluded,path`.
/// `path` is relative to the manifest's directory unless absolute.
struct ManifestEntry {
  SampleRecord record;
  std::string path;
};

std::string manifest_csv(const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> parse_manifest(std::string_view text);

/// Reads a manifest and resolves relative paths against its directory.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

/// Copies pose and occlusion from the manifest onto matching samples
/// (keyed by subject, sample and part). Samples with no manifest row raise.
void annotate(Dataset& samples, const std::vector<ManifestEntry>& manifest);

}  // namespace mmw

#endif  // MMW_MANIFEST_HPP
