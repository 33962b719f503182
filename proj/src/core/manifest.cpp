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

#include "mmw/manifest.hpp"

#include <map>
#include <string>
#include <tuple>

#include "mmw/error.hpp"
#include "text_util.hpp"

namespace mmw {

namespace {
constexpr std::string_view kHeader = "sample_id,subject_id,part,pose,occluded,path";
}

std::string manifest_csv(const std::vector<ManifestEntry>& entries) {
  std::string out(kHeader);
  out += '\n';
  for (const auto& e : entries) {
    out += e.record.sample_id + "," + e.record.subject_id + "," + std::string(to_string(e.record.part)) +
           "," + std::string(to_string(e.record.pose)) + "," + (e.record.occluded ? "1" : "0") + "," +
           e.path + "\n";
  }
  return out;
}

std::vector<ManifestEntry> parse_manifest(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.empty() || lines[0] != kHeader)
    fail(ErrorCode::BadHeader, "manifest must start with '" + std::string(kHeader) + "'");
  std::vector<ManifestEntry> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = detail::split_char(lines[i], ',');
    if (f.size() != 6 || f[0].empty() || f[1].empty() || f[5].empty())
      fail(ErrorCode::Parse, "manifest line " + std::to_string(i + 1) + ": expected 6 fields");
    ManifestEntry e;
    e.record.sample_id = std::string(f[0]);
    e.record.subject_id = std::string(f[1]);
    e.record.part = parse_body_part(f[2]);
    e.record.pose = parse_pose(f[3]);
    if (f[4] == "1" || f[4] == "true") e.record.occluded = true;
    else if (f[4] == "0" || f[4] == "false") e.record.occluded = false;
    else fail(ErrorCode::Parse, "manifest line " + std::to_string(i + 1) + ": bad occluded flag");
    e.path = std::string(f[5]);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  auto entries = parse_manifest(detail::read_file(path));
  const auto base = path.parent_path();
  for (auto& e : entries) {
    std::filesystem::path p(e.path);
    if (p.is_relative()) e.path = (base / p).string();
  }
  return entries;
}

void annotate(Dataset& samples, const std::vector<ManifestEntry>& manifest) {
  using Key = std::tuple<std::string, std::string, BodyPart>;
  std::map<Key, const SampleRecord*> index;
  for (const auto& e : manifest)
    index[{e.record.subject_id, e.record.sample_id, e.record.part}] = &e.record;
  for (Sample& s : samples) {
    auto it = index.find({s.record.subject_id, s.record.sample_id, s.record.part});
    if (it == index.end())
      fail(ErrorCode::InvalidArgument, "sample '" + s.record.subject_id + "/" + s.record.sample_id +
                                           "/" + std::string(to_string(s.record.part)) +
                                           "' has no manifest row");
    s.record.pose = it->second->pose;
    s.record.occluded = it->second->occluded;
  }
}

}  // namespace mmw
